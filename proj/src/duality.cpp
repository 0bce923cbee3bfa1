#include "dioph/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "dioph/error.hpp"

namespace dioph {

namespace {

const long kBits = 256;

double to_d(const BigRat& q) { return q.get_d(); }

double log_rat(const BigRat& q) { return log_abs(q.get_num()) - log_abs(q.get_den()); }

RealBall ball(const BigRat& q, long bits = kBits) { return RealBall::exact(q, bits); }

BigRat from_double(double d) { return BigRat(d); }

BigInt norm_inf(const IntVec& x) {
  BigInt m = 0;
  for (const auto& v : x) m = std::max(m, BigInt(::abs(v)));
  return m;
}

bool lex_less_by_norm(const IntVec& a, const IntVec& b) {
  BigInt na = norm_inf(a), nb = norm_inf(b);
  if (na != nb) return na < nb;
  return a < b;
}

BigInt pk(const BigInt& p, long k) { return pow(p, static_cast<unsigned long>(std::max(k, 0L))); }

BigInt mod_pos(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// Smallest m >= 0 with p^-m <= bound (bound > 0 as a ball).
long exponent_for(const BigInt& p, const RealBall& bound) {
  long m = 0;
  // p^-m <= bound certified from below.
  while (pow_p(p, -m) > bound.lower()) ++m;
  return m;
}

// Integer residue of xi^l mod p^m for integral xi.
BigInt power_residue(const PadicNumber& xi, int l, long m) {
  if (m <= 0) return 0;
  PadicNumber v = xi.pow(static_cast<unsigned long>(l));
  if (v.abs_precision() < m) throw Error(Errc::InsufficientPrecision, "xi_p known to fewer digits than needed");
  if (v.is_zero()) return 0;
  return v.residue(m);
}

// CRT of residues r_i mod m_i (pairwise coprime).
std::pair<BigInt, BigInt> crt(const std::vector<std::pair<BigInt, BigInt>>& rs) {
  BigInt r = 0, M = 1;
  for (const auto& [ri, mi] : rs) {
    if (mi == 1) continue;
    BigInt inv;
    mpz_invert(inv.get_mpz_t(), M.get_mpz_t(), mi.get_mpz_t());
    BigInt t = mod_pos((ri - r) * inv, mi);
    r += M * t;
    M *= mi;
    r = mod_pos(r, M);
  }
  return {r, M};
}

}  // namespace

BigRat ApproxSystem::lambda_sum() const {
  BigRat s = lambda_inf;
  for (const auto& pl : S) s += pl.lambda;
  return s;
}

void ApproxSystem::validate() const {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be >= 1");
  if (c <= 0) throw Error(Errc::InvalidArgument, "c must be positive");
  if (lambda_inf < -1) throw Error(Errc::InvalidArgument, "lambda_inf must be >= -1");
  std::set<BigInt> seen;
  for (const auto& pl : S) {
    if (!is_prime(pl.p)) throw Error(Errc::InvalidArgument, "S must contain primes");
    if (!seen.insert(pl.p).second) throw Error(Errc::InvalidArgument, "repeated prime in S");
    if (pl.lambda < 0) throw Error(Errc::InvalidArgument, "lambda_p must be >= 0");
    if (pl.xi.p() != pl.p) throw Error(Errc::InvalidArgument, "xi_p has the wrong prime");
  }
}

RealBall bound_at(const BigRat& c, const BigRat& X, const BigRat& lambda, long bits) {
  if (lambda == 0) return ball(c, bits);
  return ball(c, bits) * pow(ball(X, bits), ball(-lambda, bits));
}

bool PointCheck::ok() const {
  if (!norm_ok || !inf_ok) return false;
  for (bool b : p_ok)
    if (!b) return false;
  return true;
}

PointCheck check_point(const ApproxSystem& sys, const BigRat& X, const IntVec& x) {
  PointCheck pc;
  pc.norm_ok = BigRat(norm_inf(x)) <= X;
  const long bits = std::max(sys.xi_inf.bits(), kBits);
  RealBall L = l_form(x, sys.xi_inf);
  RealBall B = bound_at(sys.c, X, sys.lambda_inf, bits);
  RealBall d = B - L;
  if (d.positive() || (d.upper() == 0 && d.lower() == 0))
    pc.inf_ok = true;
  else if (d.negative())
    pc.inf_ok = false;
  else
    throw Error(Errc::Inconclusive, "archimedean check straddles the ball radius");
  for (const auto& pl : sys.S) {
    PadicLForm Lp = l_form(x, pl.xi);
    RealBall Bp = bound_at(sys.c, X, pl.lambda, bits);
    RealBall dp = Bp - ball(Lp.value, bits);
    bool ok;
    if (dp.positive() || (dp.lower() == 0 && dp.upper() == 0))
      ok = true;
    else if (dp.negative())
      ok = false;
    else
      throw Error(Errc::Inconclusive, "p-adic bound straddles the ball radius");
    if (!ok && Lp.upper_bound) throw Error(Errc::InsufficientPrecision, "L_p only bounded by working precision");
    pc.p_ok.push_back(ok);
  }
  return pc;
}

IntVec primitive_of(const IntVec& x, BigInt* multiplier) {
  BigInt g = content(x);
  if (g == 0) throw Error(Errc::ZeroVector, "primitive of the zero vector");
  for (const auto& v : x)
    if (v != 0) {
      if (v < 0) g = -g;
      break;
    }
  IntVec out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] / g;
  if (multiplier) *multiplier = g;
  return out;
}

std::vector<IntVec> SolutionSet::minimal() const {
  std::vector<IntVec> out;
  if (primitives.empty()) return out;
  BigInt m = norm_inf(primitives.front());
  for (const auto& v : primitives)
    if (norm_inf(v) == m) out.push_back(v);
  return out;
}

SolutionSet enumerate_solutions(const ApproxSystem& sys, const BigRat& X, const BigRat& norm_cap) {
  sys.validate();
  if (norm_cap < X) throw Error(Errc::PreconditionViolated, "norm_cap must be >= X");
  if (X < 1) throw Error(Errc::InvalidArgument, "X must be >= 1");
  SolutionSet out;
  out.X = X;
  out.box = floor_rat(X);
  const long box = out.box.get_si();
  const int n = sys.n;
  const double xi = sys.xi_inf.mid();
  std::vector<double> xpow(static_cast<size_t>(n) + 1, 1.0);
  for (int l = 1; l <= n; ++l) xpow[static_cast<size_t>(l)] = xpow[static_cast<size_t>(l) - 1] * xi;
  // widened by 1 against double rounding; the exact check decides
  const double w = bound_at(sys.c, X, sys.lambda_inf, 128).upper().get_d() + 1;

  // Residue constraints from integral p-adic coordinates.
  struct PRes {
    BigInt mod;
    std::vector<BigInt> xi_pow;  // xi^l mod p^m
  };
  std::vector<PRes> pres;
  for (const auto& pl : sys.S) {
    if (!pl.xi.integral()) continue;
    long m = exponent_for(pl.p, bound_at(sys.c, X, pl.lambda, 128));
    PRes r;
    r.mod = pk(pl.p, m);
    for (int l = 0; l <= n; ++l) r.xi_pow.push_back(m > 0 ? power_residue(pl.xi, l, m) : BigInt(0));
    pres.push_back(r);
  }

  std::vector<IntVec> found;
  IntVec x(static_cast<size_t>(n) + 1);
  for (long x0 = -box; x0 <= box; ++x0) {
    x[0] = x0;
    std::vector<std::vector<long>> cand(static_cast<size_t>(n) + 1);
    bool empty = false;
    for (int l = 1; l <= n && !empty; ++l) {
      double ctr = x0 * xpow[static_cast<size_t>(l)];
      long lo = std::max(-box, static_cast<long>(std::ceil(ctr - w)));
      long hi = std::min(box, static_cast<long>(std::floor(ctr + w)));
      if (lo > hi) {
        empty = true;
        break;
      }
      std::vector<std::pair<BigInt, BigInt>> rs;
      for (const auto& r : pres) rs.push_back({mod_pos(BigInt(x0) * r.xi_pow[static_cast<size_t>(l)], r.mod), r.mod});
      auto [res, mod] = crt(rs);
      long step = mod.fits_slong_p() ? mod.get_si() : std::numeric_limits<long>::max();
      BigInt first = BigInt(lo) + mod_pos(res - lo, mod);
      if (!first.fits_slong_p() || first > hi) {
        empty = true;
        break;
      }
      for (long v = first.get_si(); v <= hi; v += step) {
        cand[static_cast<size_t>(l)].push_back(v);
        if (v > hi - step) break;
      }
      if (cand[static_cast<size_t>(l)].empty()) empty = true;
    }
    if (empty) continue;
    std::vector<size_t> idx(static_cast<size_t>(n) + 1, 0);
    while (true) {
      bool zero = x0 == 0;
      for (int l = 1; l <= n; ++l) {
        x[static_cast<size_t>(l)] = cand[static_cast<size_t>(l)][idx[static_cast<size_t>(l)]];
        if (x[static_cast<size_t>(l)] != 0) zero = false;
      }
      if (!zero) {
        ++out.candidates;
        if (check_point(sys, X, x).ok()) found.push_back(x);
      }
      int l = n;
      while (l >= 1) {
        size_t& i = idx[static_cast<size_t>(l)];
        if (++i < cand[static_cast<size_t>(l)].size()) break;
        i = 0;
        --l;
      }
      if (l < 1) break;
    }
  }

  std::set<IntVec> prims;
  for (const auto& s : found) {
    Solution sol;
    sol.x = s;
    sol.primitive = primitive_of(s, &sol.multiplier);
    prims.insert(sol.primitive);
    // m = sign(l) prod_p p^v_p(l)
    BigInt m = sol.multiplier < 0 ? BigInt(-1) : BigInt(1);
    for (const auto& pl : sys.S) m *= pk(pl.p, valuation(sol.multiplier, pl.p));
    if (m != sol.multiplier) {
      IntVec mv(sol.primitive.size());
      for (size_t i = 0; i < mv.size(); ++i) mv[i] = m * sol.primitive[i];
      if (!check_point(sys, X, mv).ok()) out.zs_factoring_ok = false;
    }
    out.solutions.push_back(std::move(sol));
  }
  out.primitives.assign(prims.begin(), prims.end());
  std::sort(out.primitives.begin(), out.primitives.end(), lex_less_by_norm);
  return out;
}

namespace {

struct Pieces {
  double log_norm, log_Linf;
  std::vector<double> log_Lp, lam_p;
  double log_c, lam_inf;
};

Pieces pieces_of(const IntVec& v, const ApproxSystem& sys) {
  Pieces pc;
  pc.log_norm = log_abs(norm_inf(v));
  RealBall L = l_form(v, sys.xi_inf);
  if (L.contains_zero()) throw Error(Errc::InsufficientPrecision, "L_inf(v) not separated from 0");
  pc.log_Linf = L.log_mid();
  for (const auto& pl : sys.S) {
    PadicLForm Lp = l_form(v, pl.xi);
    if (Lp.upper_bound) throw Error(Errc::InsufficientPrecision, "L_p(v) vanishes to working precision");
    pc.log_Lp.push_back(log_rat(Lp.value));
    pc.lam_p.push_back(to_d(pl.lambda));
  }
  pc.log_c = log_rat(sys.c);
  pc.lam_inf = to_d(sys.lambda_inf);
  return pc;
}

double crit(const Pieces& pc, double u) {
  double g = std::min(u - pc.log_norm, pc.log_c - pc.lam_inf * u - pc.log_Linf);
  for (size_t i = 0; i < pc.log_Lp.size(); ++i) g += std::min(0.0, pc.log_c - pc.lam_p[i] * u - pc.log_Lp[i]);
  return g;
}

}  // namespace

IcInterval jc_interval(const IntVec& v, const ApproxSystem& sys) {
  IcInterval out;
  out.v = v;
  Pieces pc = pieces_of(v, sys);
  std::vector<double> us{0.0, pc.log_norm};
  if (pc.lam_inf != -1) us.push_back((pc.log_c - pc.log_Linf + pc.log_norm) / (1 + pc.lam_inf));
  for (size_t i = 0; i < pc.log_Lp.size(); ++i)
    if (pc.lam_p[i] > 0) us.push_back((pc.log_c - pc.log_Lp[i]) / pc.lam_p[i]);
  double best = 0, bu = 0;
  bool have = false;
  for (double u : us) {
    if (u < 0) continue;
    double g = crit(pc, u);
    if (!have || g > best) {
      best = g;
      bu = u;
      have = true;
    }
  }
  if (best < 0) return out;
  out.empty = false;
  double lo = 0;
  if (crit(pc, 0) < 0) {
    double a = 0, b = bu;
    for (int i = 0; i < 200; ++i) {
      double m = 0.5 * (a + b);
      (crit(pc, m) >= 0 ? b : a) = m;
    }
    lo = b;
  }
  double a = bu, b = bu + 1;
  while (crit(pc, b) >= 0 && b < 1e6) b = bu + 2 * (b - bu);
  double hi;
  if (crit(pc, b) >= 0) {
    hi = INFINITY;
  } else {
    for (int i = 0; i < 200; ++i) {
      double m = 0.5 * (a + b);
      (crit(pc, m) >= 0 ? a : b) = m;
    }
    hi = std::exp(a);
  }
  out.lo = std::exp(lo);
  out.hi = hi;
  return out;
}

IcInterval jc_closed_form(const IntVec& v, const ApproxSystem& sys) {
  IcInterval out;
  out.v = v;
  Pieces pc = pieces_of(v, sys);
  double lo = std::max(0.0, pc.log_norm), hi;
  if (sys.S.empty() && pc.lam_inf > 0) {
    hi = (pc.log_c - pc.log_Linf) / pc.lam_inf;
  } else if (sys.S.size() == 1 && sys.lambda_inf == -1 && pc.lam_p[0] > 1) {
    hi = (pc.log_c - pc.log_norm - pc.log_Lp[0]) / (pc.lam_p[0] - 1);
  } else {
    throw Error(Errc::PreconditionViolated, "no closed form for this system");
  }
  if (hi < lo) return out;
  out.empty = false;
  out.lo = std::exp(lo);
  out.hi = std::exp(hi);
  return out;
}

MinkowskiReport minkowski_construct(const ApproxSystem& sys, const BigRat& X) {
  sys.validate();
  const int n = sys.n;
  if (sys.lambda_sum() > make_rat(1, n)) throw Error(Errc::PreconditionViolated, "lambda outside the Minkowski region");
  if (X < 1) throw Error(Errc::InvalidArgument, "X must be >= 1");
  MinkowskiReport rep;
  const long bits = kBits;
  rep.branch = sys.lambda_inf == -1 ? 2 : 1;
  RealBall one = ball(1, bits);
  rep.M = RealBall::max(one, sys.xi_inf.pow(n).abs()) * BigInt(2);

  // d_0 clears the denominators of t_p; b from n_p.
  rep.d0 = 1;
  rep.b = 1;
  for (const auto& pl : sys.S) {
    if (!pl.xi.integral()) rep.d0 *= pk(pl.p, -static_cast<long>(n) * pl.xi.valuation());
    long np = exponent_for(pl.p, bound_at(sys.c, X, pl.lambda, bits));
    rep.n_p.push_back(np);
    rep.b *= pk(pl.p, np);
  }
  rep.d = {rep.d0};
  BigInt prodp = 1;
  for (const auto& pl : sys.S) prodp *= pl.p;
  for (int l = 1; l <= n; ++l) {
    std::vector<PadicTarget> targets;
    BigRat span = 1;
    for (size_t i = 0; i < sys.S.size(); ++i) {
      const auto& pl = sys.S[i];
      PadicNumber t = sys.S[i].xi.pow(static_cast<unsigned long>(l)) * rep.d0;
      targets.push_back({t, pow_p(pl.p, -rep.n_p[i])});
      span *= BigRat(pl.p) * pk(pl.p, rep.n_p[i]);
    }
    BigRat r = strong_approx({span / 2, span / 2}, targets);
    if (r.get_den() != 1) throw Error(Errc::PreconditionViolated, "strong approximation gave a non-integer d_l");
    BigInt dl = r.get_num();
    while (dl <= 0) dl += rep.b;
    rep.d.push_back(dl);
  }
  rep.basis.push_back(rep.d);
  for (int l = 1; l <= n; ++l) {
    IntVec u(static_cast<size_t>(n) + 1, BigInt(0));
    u[static_cast<size_t>(l)] = rep.b;
    rep.basis.push_back(u);
  }
  rep.det = rep.d0 * pow(rep.b, static_cast<unsigned long>(n));
  const BigInt two_n1 = pow(BigInt(2), static_cast<unsigned long>(n + 1));
  rep.rhs = ball(BigRat(two_n1 * rep.det), bits);
  RealBall Xb = ball(X, bits);
  if (rep.branch == 1) {
    // 2^(n+1) M^-1 c^n X^(1 - n lambda_inf)
    rep.volume = ball(BigRat(two_n1), bits) / rep.M * ball(sys.c, bits).pow(n) *
                 pow(Xb, ball(1 - n * sys.lambda_inf, bits));
  } else {
    rep.volume = ball(BigRat(two_n1), bits) * Xb.pow(n + 1);
  }
  if (!(rep.volume - rep.rhs).positive())
    throw Error(Errc::VolumeInequalityFails, "vol = " + rep.volume.str(8) + " <= 2^(n+1) det = " + rep.rhs.str(8));

  // Enumerate k0 u0 + sum k_l b e_l by |k0|.
  const double xi = sys.xi_inf.mid();
  const double Xd = to_d(X);
  const double x0max = rep.branch == 1 ? (Xb / rep.M).lower().get_d() : Xd;
  const double w = rep.branch == 1 ? bound_at(sys.c, X, sys.lambda_inf, 128).upper().get_d() * (1 + 1e-9) : 2 * Xd;
  const double bd = rep.b.get_d(), d0 = rep.d0.get_d();
  const long kmax = static_cast<long>(std::floor(x0max / d0));
  for (long a = 0; a <= kmax; ++a) {
    for (int sgn : {1, -1}) {
      if (a == 0 && sgn < 0) continue;
      long k0 = sgn * a;
      IntVec base(static_cast<size_t>(n) + 1);
      base[0] = BigInt(k0) * rep.d0;
      std::vector<std::pair<long, long>> rng(static_cast<size_t>(n) + 1);
      bool empty = false;
      for (int l = 1; l <= n; ++l) {
        double dl = rep.d[static_cast<size_t>(l)].get_d();
        double ctr = rep.branch == 1 ? base[0].get_d() * std::pow(xi, l) : 0;
        double lo = std::max(ctr - w, -Xd), hi = std::min(ctr + w, Xd);
        long jlo = static_cast<long>(std::ceil((lo - k0 * dl) / bd)) - 1;
        long jhi = static_cast<long>(std::floor((hi - k0 * dl) / bd)) + 1;
        if (jlo > jhi) empty = true;
        rng[static_cast<size_t>(l)] = {jlo, jhi};
      }
      if (empty) continue;
      std::vector<long> j(static_cast<size_t>(n) + 1);
      for (int l = 1; l <= n; ++l) j[static_cast<size_t>(l)] = rng[static_cast<size_t>(l)].first;
      while (true) {
        IntVec x = base;
        bool zero = k0 == 0;
        for (int l = 1; l <= n; ++l) {
          x[static_cast<size_t>(l)] = BigInt(k0) * rep.d[static_cast<size_t>(l)] + BigInt(j[static_cast<size_t>(l)]) * rep.b;
          if (x[static_cast<size_t>(l)] != 0) zero = false;
        }
        if (!zero) {
          PointCheck pc = check_point(sys, X, x);
          if (pc.ok()) {
            rep.point = x;
            rep.check = pc;
            return rep;
          }
        }
        int l = n;
        while (l >= 1) {
          long& v = j[static_cast<size_t>(l)];
          if (++v <= rng[static_cast<size_t>(l)].second) break;
          v = rng[static_cast<size_t>(l)].first;
          --l;
        }
        if (l < 1) break;
      }
    }
  }
  throw Error(Errc::SearchExhausted, "no lattice point of the constructed lattice satisfies the system");
}

DualPoints dual_points(const ApproxSystem& sys, const BigRat& X, const DualConfig& cfg) {
  sys.validate();
  const int n = sys.n;
  if (cfg.check_primal) {
    SolutionSet prim = enumerate_solutions(sys, X, X);
    if (!prim.solutions.empty())
      throw Error(Errc::HypothesisFails, "the primal system has a solution at X = " + X.get_str());
  }
  for (const auto& pl : sys.S)
    if (!pl.xi.integral()) throw Error(Errc::PreconditionViolated, "dual_points needs integral xi_p");
  DualPoints out;
  const BigRat lam = sys.lambda_sum();
  const double Xd = to_d(X);
  const double xi = sys.xi_inf.mid();
  std::vector<double> xpow(static_cast<size_t>(n) + 1, 1.0);
  for (int l = 1; l <= n; ++l) xpow[static_cast<size_t>(l)] = xpow[static_cast<size_t>(l) - 1] * xi;
  const double XB = std::pow(Xd, to_d(lam));
  const double XW = std::pow(Xd, to_d(lam - sys.lambda_inf - 1));

  // |<y, t_p>|_p <= c X^-lambda_p  <=>  y_0 = -sum y_l xi_p^l mod p^m.
  struct PRes {
    BigInt mod;
    std::vector<BigInt> xi_pow;
  };
  std::vector<PRes> pres;
  out.a = 1;
  out.b = 1;
  for (const auto& pl : sys.S) {
    RealBall delta = bound_at(sys.c, X, pl.lambda, 128);
    long m = exponent_for(pl.p, delta);
    PRes r;
    r.mod = pk(pl.p, m);
    for (int l = 0; l <= n; ++l) r.xi_pow.push_back(m > 0 ? power_residue(pl.xi, l, m) : BigInt(0));
    pres.push_back(r);
    // p^k <= 1/delta < p^(k+1), b = prod p^(k+1)
    long k = 0;
    while (BigRat(pk(pl.p, k + 1)) <= 1 / delta.upper()) ++k;
    out.b *= pk(pl.p, k + 1);
  }

  double K1 = cfg.K1, K2 = cfg.K2;
  for (int round = 0; round <= cfg.max_doublings; ++round, K1 *= 2, K2 *= 2) {
    const long B = static_cast<long>(std::floor(K1 * XB));
    const double W = K2 * XW;
    if (B < 1) continue;
    std::vector<IntVec> cands;
    IntVec y(static_cast<size_t>(n) + 1);
    std::vector<long> yl(static_cast<size_t>(n) + 1, -B);
    while (true) {
      double s = 0;
      for (int l = 1; l <= n; ++l) s += yl[static_cast<size_t>(l)] * xpow[static_cast<size_t>(l)];
      double lo = std::max(-s - W, static_cast<double>(-B)), hi = std::min(-s + W, static_cast<double>(B));
      if (lo <= hi) {
        std::vector<std::pair<BigInt, BigInt>> rs;
        for (const auto& r : pres) {
          BigInt acc = 0;
          for (int l = 1; l <= n; ++l) acc += BigInt(yl[static_cast<size_t>(l)]) * r.xi_pow[static_cast<size_t>(l)];
          rs.push_back({mod_pos(-acc, r.mod), r.mod});
        }
        auto [res, mod] = crt(rs);
        long y0lo = static_cast<long>(std::ceil(lo)), y0hi = static_cast<long>(std::floor(hi));
        BigInt first = BigInt(y0lo) + mod_pos(res - y0lo, mod);
        if (first.fits_slong_p() && first <= y0hi) {
          long step = mod.fits_slong_p() ? mod.get_si() : std::numeric_limits<long>::max();
          for (long y0 = first.get_si(); y0 <= y0hi; y0 += step) {
            y[0] = y0;
            bool zero = y0 == 0;
            for (int l = 1; l <= n; ++l) {
              y[static_cast<size_t>(l)] = yl[static_cast<size_t>(l)];
              if (yl[static_cast<size_t>(l)] != 0) zero = false;
            }
            if (!zero) cands.push_back(y);
            if (y0 > y0hi - step) break;
          }
        }
      }
      int l = n;
      while (l >= 1) {
        long& v = yl[static_cast<size_t>(l)];
        if (++v <= B) break;
        v = -B;
        --l;
      }
      if (l < 1) break;
    }
    out.candidates = static_cast<long>(cands.size());
    std::sort(cands.begin(), cands.end(), lex_less_by_norm);
    std::vector<IntVec> basis;
    const RealBall Wb = ball(from_double(W), kBits);
    for (const auto& c : cands) {
      // Certify the archimedean bound before using the point.
      RealBall s = ball(0, kBits);
      RealBall pw = ball(1, kBits);
      for (int l = 0; l <= n; ++l) {
        s = s + pw * c[static_cast<size_t>(l)];
        pw = pw * sys.xi_inf;
      }
      if (!(Wb - s.abs()).positive()) continue;
      std::vector<IntVec> trial = basis;
      trial.push_back(c);
      if (rank(trial) == static_cast<int>(trial.size())) basis = trial;
      if (static_cast<int>(basis.size()) == n + 1) break;
    }
    if (static_cast<int>(basis.size()) == n + 1) {
      out.points = basis;
      out.det = det(basis);
      out.K1 = K1;
      out.K2 = K2;
      out.doublings = round;
      out.a = 1;
      for (const auto& pl : sys.S)
        if (!pl.xi.integral()) out.a *= pk(pl.p, -static_cast<long>(n) * pl.xi.valuation());
      return out;
    }
  }
  throw Error(Errc::NotFound, "no n+1 independent dual points within the relaxation budget");
}

PadicNumber default_rho(const PadicPlace& place, int n, const IntPoly& R) {
  const BigInt& p = place.p;
  long e = place.xi.integral() ? 0 : -static_cast<long>(n) * place.xi.valuation();
  if (R.degree() >= 1) {
    PadicNumber d = eval(R.derivative(), place.xi);
    if (!d.is_zero() && d.valuation() == e) ++e;
  }
  return PadicNumber::from_int(pk(p, e), p, e + std::max(place.xi.precision(), 64L));
}

bool PolyCertificate::ok() const {
  if (!value_band_ok || !deriv_band_ok) return false;
  for (const auto& pp : padic)
    if (!pp.value_ok || !pp.deriv_ok) return false;
  return true;
}

PolyCertificate build_polynomial(const std::vector<IntVec>& points, const Targets& targets, const ApproxSystem& sys,
                                 const BigRat& X, int max_halvings) {
  sys.validate();
  const int n = sys.n;
  const size_t N1 = static_cast<size_t>(n) + 1;
  if (points.size() != N1) throw Error(Errc::InvalidArgument, "need n + 1 points");
  // A[m][i] = x_m^(i)
  std::vector<IntVec> A(N1, IntVec(N1));
  for (size_t i = 0; i < N1; ++i)
    for (size_t m = 0; m < N1; ++m) A[m][i] = points[i][m];
  const BigInt D = det(A);
  if (D == 0) throw Error(Errc::LinearAlgebraSingular, "P_i are linearly dependent");
  const std::vector<IntVec> adj = adjugate(A);

  const long bits = std::max(sys.xi_inf.bits(), kBits);
  const double lam = to_d(sys.lambda_sum());
  const double Xd = to_d(X);
  const double logX = std::log(Xd);
  const double e_inf = to_d(sys.lambda_sum() - sys.lambda_inf - 1);

  std::vector<IntPoly> Pi;
  for (const auto& pt : points) Pi.emplace_back(IntVec(pt.begin(), pt.end()));
  // c1, c2 measured on the points: value and derivative sizes at xi
  // relative to the dual bounds, and the p-adic values.
  double c1 = 0, c2 = 0;
  for (size_t i = 0; i < N1; ++i) {
    RealBall v = eval(Pi[i], sys.xi_inf).abs();
    if (v.upper() > 0) c1 = std::max(c1, std::exp(log_rat(v.upper()) - e_inf * logX));
    RealBall dv = eval(Pi[i].derivative(), sys.xi_inf).abs();
    if (dv.upper() > 0) c2 = std::max(c2, std::exp(log_rat(dv.upper()) - lam * logX));
    for (const auto& pl : sys.S) {
      PadicNumber pv = eval(Pi[i], pl.xi);
      c1 = std::max(c1, std::exp(log_rat(pv.abs()) + to_d(pl.lambda) * logX));
    }
  }
  if (c1 == 0 || c2 == 0) throw Error(Errc::LinearAlgebraSingular, "dual points vanish at xi");

  PolyCertificate cert;
  cert.c1 = c1;
  cert.c2 = c2;

  BigRat eps0 = 1;
  bool first = true;
  for (const auto& pl : sys.S) {
    auto it = targets.rho_p.find(pl.p.get_si());
    if (it == targets.rho_p.end()) throw Error(Errc::InvalidArgument, "missing rho_p");
    BigRat tn = pl.xi.integral() ? BigRat(1) : pow_p(pl.p, -static_cast<long>(n) * pl.xi.valuation());
    BigRat rho_abs = it->second.abs();
    if (rho_abs == 0 || rho_abs > 1 / tn) throw Error(Errc::PreconditionViolated, "need 0 < |rho_p|_p <= 1/||t_p||_p");
    BigRat e = rho_abs / tn / BigRat(pl.p);
    eps0 = first ? e : std::min(eps0, e);
    first = false;
  }

  BigRat eps = eps0;
  for (int h = 0; h <= max_halvings; ++h, eps /= 2) {
    BigRat Nrat = 1;
    for (const auto& pl : sys.S) Nrat *= BigRat(pl.p) / eps;
    const double Nd = to_d(Nrat);
    const double epsinf_d = 2 * (n + 1) * Nd * c1 * std::exp(e_inf * logX);
    const double rhoinf_d = 2 * (n + 1) * Nd * c2 * std::exp(lam * logX);
    RealBall eps_inf = ball(from_double(epsinf_d), bits), rho_inf = ball(from_double(rhoinf_d), bits);

    // theta_inf = A^-1 (-eta + eps - rho xi, rho, 0, ...)
    std::vector<RealBall> rhs(N1, ball(0, bits));
    rhs[0] = -targets.eta_inf + eps_inf - rho_inf * sys.xi_inf;
    rhs[1] = rho_inf;
    std::vector<BigRat> r(N1);
    std::vector<std::vector<PadicNumber>> theta_p;
    std::vector<long> kps;
    for (const auto& pl : sys.S) {
      const BigInt& p = pl.p;
      auto eta = targets.eta_p.find(p.get_si());
      auto rho = targets.rho_p.find(p.get_si());
      if (eta == targets.eta_p.end()) throw Error(Errc::InvalidArgument, "missing eta_p");
      // p^k <= c1^-1 X^lambda_p < p^(k+1)
      long k = static_cast<long>(std::floor((to_d(pl.lambda) * logX - std::log(c1)) / std::log(p.get_d())));
      kps.push_back(k);
      const long prec = pl.xi.abs_precision();
      PadicNumber epsp = PadicNumber::from_rat(pow_p(p, k), p, std::max(prec, k + 64));
      std::vector<PadicNumber> rp(N1, PadicNumber::zero(p, prec));
      rp[0] = -eta->second + epsp - rho->second * pl.xi;
      rp[1] = rho->second;
      std::vector<PadicNumber> th;
      PadicNumber Dp = PadicNumber::from_int(D, p, prec + valuation(D, p) + 64);
      for (size_t i = 0; i < N1; ++i) {
        PadicNumber acc = PadicNumber::zero(p, prec);
        for (size_t m = 0; m < N1; ++m) acc = acc + rp[m] * adj[i][m];
        th.push_back(acc / Dp);
      }
      theta_p.push_back(th);
    }
    for (size_t i = 0; i < N1; ++i) {
      RealBall th = ball(0, bits);
      for (size_t m = 0; m < N1; ++m) th = th + rhs[m] * adj[i][m];
      th = th / D;
      if (th.radius() * 4 > Nrat) throw Error(Errc::InsufficientPrecision, "theta_inf too coarse");
      std::vector<PadicTarget> pt;
      for (size_t s = 0; s < sys.S.size(); ++s) pt.push_back({theta_p[s][i], eps});
      r[i] = strong_approx({th.center(), Nrat / 2}, pt);
    }
    std::vector<BigRat> xm(N1, BigRat(0));
    for (size_t m = 0; m < N1; ++m)
      for (size_t i = 0; i < N1; ++i) xm[m] += r[i] * BigRat(points[i][m]);
    bool integral = std::all_of(xm.begin(), xm.end(), [](const BigRat& q) { return q.get_den() == 1; });
    if (!integral) {
      cert.halvings = h + 1;
      continue;
    }
    IntVec coeffs;
    for (const auto& q : xm) coeffs.push_back(q.get_num());
    cert.P = IntPoly(coeffs);
    cert.eps = eps;
    cert.N = Nrat;
    cert.halvings = h;
    cert.eps_inf = eps_inf;
    cert.rho_inf = rho_inf;
    cert.value_inf = (eval(cert.P, sys.xi_inf) + targets.eta_inf).abs();
    cert.deriv_inf = eval(cert.P.derivative(), sys.xi_inf).abs();
    RealBall unit_v = ball(from_double((n + 1) * Nd * c1 * std::exp(e_inf * logX)), bits);
    RealBall unit_d = ball(from_double((n + 1) * Nd * c2 * std::exp(lam * logX)), bits);
    cert.value_band_ok = !(cert.value_inf - unit_v).negative() && !(unit_v * BigInt(3) - cert.value_inf).negative();
    cert.deriv_band_ok = !(cert.deriv_inf - unit_d).negative() && !(unit_d * BigInt(3) - cert.deriv_inf).negative();
    for (size_t s = 0; s < sys.S.size(); ++s) {
      const auto& pl = sys.S[s];
      PolyCertificate::PadicPart pp;
      pp.p = pl.p;
      pp.k_p = kps[s];
      PadicNumber v = eval(cert.P, pl.xi) + targets.eta_p.at(pl.p.get_si());
      pp.value_abs = v.abs();
      pp.expected_value_abs = pow_p(pl.p, -kps[s]);
      pp.value_ok = !v.is_zero() && pp.value_abs == pp.expected_value_abs;
      PadicNumber dv = eval(cert.P.derivative(), pl.xi);
      pp.deriv_abs = dv.abs();
      pp.rho_abs = targets.rho_p.at(pl.p.get_si()).abs();
      pp.deriv_ok = !dv.is_zero() && pp.deriv_abs == pp.rho_abs;
      cert.padic.push_back(pp);
    }
    return cert;
  }
  throw Error(Errc::IntegralityFails, "coefficients not integral after " + std::to_string(max_halvings) + " halvings");
}

RootReport extract_roots(const IntPoly& F, const ApproxSystem& sys, long bits) {
  RootReport rep;
  const double lam = to_d(sys.lambda_sum());
  if (F.degree() < 1) throw Error(Errc::PreconditionViolated, "F must be non-constant");
  if (sys.lambda_inf > -1) {
    const RealBall& xi = sys.xi_inf;
    RealBall fx = eval(F, xi), dfx = eval(F.derivative(), xi);
    if (dfx.contains_zero()) throw Error(Errc::NoSignChange, "F'(xi) not separated from 0");
    RealBall beta = xi - fx * BigInt(2) / dfx;
    BigRat a = xi.center(), b = beta.center();
    BigRat fa = F.eval(a), fb = F.eval(b);
    if (fa == 0) {
      b = a;
    } else if (fb == 0) {
      a = b;
    } else if ((fa > 0) == (fb > 0)) {
      throw Error(Errc::NoSignChange, "F has the same sign at xi and xi - 2F(xi)/F'(xi)");
    }
    BigRat lo = std::min(a, b), hi = std::max(a, b);
    const bool up = F.eval(lo) < 0;
    const BigRat width = pow_p(2, -bits);
    while (hi - lo > width) {
      BigRat m = (lo + hi) / 2;
      BigRat fm = F.eval(m);
      if (fm == 0) {
        lo = hi = m;
        break;
      }
      ((fm < 0) == up ? lo : hi) = m;
    }
    rep.has_real = true;
    rep.alpha_inf = RealBall::interval(lo, hi, std::max(bits, xi.bits()));
    rep.dist_inf = (xi - rep.alpha_inf).abs();
    rep.predicted_inf = (to_d(sys.lambda_inf) + 1) / lam;
  }
  for (const auto& pl : sys.S) {
    Cleared cl = denominator_clear(F, pl.xi);
    PadicNumber dfx = eval(cl.f.derivative(), cl.xi);
    long e = dfx.is_zero() ? 0 : dfx.valuation();
    long target = cl.xi.abs_precision() - 2 * e - 4;
    if (target < 1) throw Error(Errc::InsufficientPrecision, "xi_p too short for Hensel lifting");
    HenselResult h = hensel_lift(cl.f, cl.xi, target);
    RootReport::PadicRoot pr;
    pr.p = pl.p;
    PadicNumber dp = PadicNumber::from_int(cl.d, pl.p, target + 64);
    pr.alpha = h.root / dp;
    BigRat dabs = abs_at(cl.d, Place::prime(pl.p));
    pr.dist = h.dist / dabs;
    PadicNumber fx = eval(F, pl.xi), fdx = eval(F.derivative(), pl.xi);
    pr.bound = fx.abs() / fdx.abs();
    pr.integral = pr.alpha.is_zero() || pr.alpha.valuation() >= 0;
    pr.predicted = to_d(pl.lambda) / lam;
    rep.padic.push_back(pr);
  }
  return rep;
}

PipelineRow approx_poly(const ApproxSystem& sys, const IntPoly& R, const BigRat& X, const DualConfig& cfg) {
  if (R.degree() <= sys.n) throw Error(Errc::PreconditionViolated, "deg R must exceed n");
  PipelineRow row;
  row.X = X;
  row.dual = dual_points(sys, X, cfg);
  Targets t;
  t.eta_inf = eval(R, sys.xi_inf);
  for (const auto& pl : sys.S) {
    PadicNumber eta = eval(R, pl.xi);
    if (!eta.integral()) throw Error(Errc::PreconditionViolated, "R(xi_p) must be p-integral");
    t.eta_p.emplace(pl.p.get_si(), eta);
    t.rho_p.emplace(pl.p.get_si(), default_rho(pl, sys.n, R));
  }
  row.poly = build_polynomial(row.dual.points, t, sys, X);
  row.F = row.poly.P + R;
  row.H = row.F.height();
  row.roots = extract_roots(row.F, sys);
  return row;
}

}  // namespace dioph
