#include "dioph/approx.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "dioph/error.hpp"

namespace dioph {

namespace {

const double kGamma = (1.0 + std::sqrt(5.0)) / 2.0;

long log2_ceil(const BigInt& v) {
  BigInt a = ::abs(v);
  return a == 0 ? 0 : static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2));
}

bool divides(const BigInt& d, const BigInt& n) {
  if (d == 0) return n == 0;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

BigInt sgn_pow(long k) { return k % 2 == 0 ? BigInt(1) : BigInt(-1); }

// Rows for [k_lo, k_hi] at a fixed xi ball.
std::vector<FracRow> frac_rows(const EaSeq& seq, const RealBall& xi, const IntPoly& R, long k_lo, long k_hi) {
  std::vector<FracRow> rows;
  RealBall r = eval(R, xi);
  const BigRat tol(1, 1000);
  for (long k = k_lo; k <= k_hi; ++k) {
    RealBall v = frac_dist(r * seq.at(k).x0);
    bool ok = v.upper() == 0 || v.radius() < tol * v.lower();
    rows.push_back({k, v, ok});
  }
  return rows;
}

}  // namespace

int frac_period(const IntPoly& R) {
  if (R.degree() > 4) throw Error(Errc::PreconditionViolated, "deg R must be <= 4");
  return R.degree() == 4 ? 6 : 3;
}

FracSeries frac_series(const EaSeq& seq, const EaLimit& lim, const IntPoly& R, long k_lo, long k_hi) {
  FracSeries s;
  s.R = R;
  s.period = frac_period(R);
  if (k_lo < 1 || k_hi < k_lo) throw Error(Errc::InvalidArgument, "empty k range");
  const BigInt H = std::max(R.height(), BigInt(1));
  long bits = 2 * log2_ceil(seq.X(k_hi)) + log2_ceil(H) + 4 * std::max(R.degree(), 1) + 40;
  for (int attempt = 0;; ++attempt) {
    RealBall xi = ea_xi(seq, lim, bits);
    s.rows = frac_rows(seq, xi, R, k_lo, k_hi);
    bool all = std::all_of(s.rows.begin(), s.rows.end(), [](const FracRow& r) { return r.conclusive; });
    if (all || attempt == 3) break;
    bits += bits / 2;
  }
  s.bits = bits;
  const double logH = log_abs(H);
  for (size_t i = 0; i + s.period < s.rows.size(); ++i) {
    const FracRow &a = s.rows[i], &b = s.rows[i + s.period];
    RealBall d = b.value - a.value;
    double scaled = 0;
    if (!d.contains_zero() || d.upper() != 0) {
      double la = d.abs().log_mid();
      scaled = std::isfinite(la) ? std::exp(la + log_abs(seq.X(a.k)) - logH) : 0;
    }
    s.diffs.push_back({a.k, d, scaled});
    s.C = std::max(s.C, scaled);
  }
  return s;
}

std::vector<AccumulationPoint> accumulation_points(const EaSeq& seq, const FracSeries& series) {
  std::vector<AccumulationPoint> out;
  const int P = series.period;
  const BigInt H = std::max(series.R.height(), BigInt(1));
  // Rational stand-in for the fitted constant, rounded up.
  BigRat C = make_rat(BigInt(static_cast<long>(std::ceil(series.C * 1024.0)) + 1), 1024);
  for (int l = 0; l < P; ++l) {
    AccumulationPoint ap;
    ap.l = l;
    std::vector<const FracRow*> members;
    for (const auto& r : series.rows)
      if (((r.k % P) + P) % P == l) members.push_back(&r);
    if (members.size() < 2) throw Error(Errc::NotConverged, "class " + std::to_string(l) + " has < 2 members");
    for (auto* m : members) ap.members.push_back(m->k);
    auto inflated = [&](const FracRow* m) {
      BigRat tail = 20 * C * H / BigRat(seq.X(m->k));
      return m->value.inflate(tail);
    };
    const FracRow* a = members[members.size() - 2];
    const FracRow* b = members.back();
    RealBall ia = inflated(a), ib = inflated(b);
    if (!ia.overlaps(ib))
      throw Error(Errc::NotConverged, "class " + std::to_string(l) + ": last two members disagree");
    ap.limit = RealBall::intersect(ia, ib);
    BigRat mag = std::max(BigRat(1), abs(ap.limit.center()));
    ap.converged = ap.limit.radius() < mag / 1000000;
    ap.positive = ap.limit.positive();
    // Decay of successive class differences.
    std::vector<double> logs;
    for (size_t j = 0; j + 1 < members.size(); ++j) {
      RealBall d = (members[j + 1]->value - members[j]->value).abs();
      double ld = d.contains_zero() ? NAN : d.log_mid();
      logs.push_back(ld);
    }
    double sum = 0;
    int n = 0;
    for (size_t j = 0; j + 1 < logs.size(); ++j)
      if (std::isfinite(logs[j]) && std::isfinite(logs[j + 1]) && logs[j] < 0) {
        sum += logs[j + 1] / logs[j];
        ++n;
      }
    ap.rate = n ? sum / n : NAN;
    out.push_back(ap);
  }
  return out;
}

namespace {

struct QInt {
  BigInt n, d;  // n / d with d > 0
};

BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

ContinuedFraction expand(const RealBall& alpha, size_t count, size_t* certified_out) {
  BigRat lo = alpha.lower(), hi = alpha.upper();
  QInt a{lo.get_num(), lo.get_den()}, b{hi.get_num(), hi.get_den()};
  ContinuedFraction cf;
  BigInt p1 = 1, q1 = 0, p2 = 0, q2 = 1;  // p_{m-1}, q_{m-1}, p_{m-2}, q_{m-2}
  while (cf.quotients.size() < count) {
    BigInt qa = floor_div(a.n, a.d), qb = floor_div(b.n, b.d);
    if (qa != qb) break;
    cf.quotients.push_back(qa);
    BigInt p = qa * p1 + p2, q = qa * q1 + q2;
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
    cf.convergents.push_back(make_rat(p, q));
    BigInt ra = a.n - qa * a.d, rb = b.n - qb * b.d;
    bool same = a.n * b.d == b.n * a.d;
    if (same && ra == 0) {
      cf.terminated = true;
      break;
    }
    if (ra == 0 || rb == 0) break;
    // x -> 1 / (x - q) reverses the order of the endpoints.
    QInt na{b.d, rb}, nb{a.d, ra};
    a = na;
    b = nb;
  }
  *certified_out = cf.quotients.size();
  return cf;
}

}  // namespace

ContinuedFraction cf_expand(const RealBall& alpha, size_t count) {
  size_t n = 0;
  ContinuedFraction cf = expand(alpha, count, &n);
  if (n < count && !cf.terminated)
    throw Error(Errc::InsufficientPrecision, "partial quotient " + std::to_string(n) + " not certified");
  return cf;
}

ContinuedFraction cf_certified(const RealBall& alpha, size_t count) {
  size_t n = 0;
  return expand(alpha, count, &n);
}

ContinuedFraction cf_exact(const BigRat& alpha) {
  ContinuedFraction cf;
  BigInt p1 = 1, q1 = 0, p2 = 0, q2 = 1;
  BigInt num = alpha.get_num(), den = alpha.get_den();
  while (true) {
    BigInt q = floor_div(num, den);
    cf.quotients.push_back(q);
    BigInt p = q * p1 + p2, qq = q * q1 + q2;
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = qq;
    cf.convergents.push_back(make_rat(p, qq));
    BigInt r = num - q * den;
    if (r == 0) break;
    num = den;
    den = r;
  }
  cf.terminated = true;
  return cf;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  if (n < 2 || y.size() != n) return NAN;
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  return sxx == 0 ? NAN : sxy / sxx;
}

namespace {

// Limit of class l for R, from a series run as far as the sequence allows.
RealBall class_limit(const EaSeq& seq, const EaLimit& lim, const IntPoly& R, int l, FracSeries* keep) {
  const long K = seq.last() - 3;
  if (K < 10) throw Error(Errc::InsufficientTail, "sequence too short for accumulation limits");
  FracSeries s = frac_series(seq, lim, R, 3, K);
  auto pts = accumulation_points(seq, s);
  if (keep) *keep = s;
  return pts.at(static_cast<size_t>(l)).limit;
}

void finish_row(ConvergentRow& row, const RealBall& limit, const std::map<BigRat, bool>& convs, const EaSeq& seq) {
  BigRat approx = make_rat(::abs(row.num), row.den);
  row.gcd = gcd(row.num, row.den);
  RealBall err = (limit - approx).abs();
  row.log_X = log_abs(seq.X(row.k));
  row.err_certified = !err.contains_zero() && err.radius() * 10 < err.lower();
  row.log_err = err.contains_zero() ? NAN : err.log_mid();
  row.is_convergent = convs.count(approx) > 0;
}

void fit_rows(ConvergentReport& rep) {
  std::vector<double> x1, y1, x2, y2;
  for (const auto& r : rep.rows) {
    if (!r.err_certified) continue;
    (r.kind == 1 ? x1 : x2).push_back(r.log_X);
    (r.kind == 1 ? y1 : y2).push_back(r.log_err);
    if (r.is_convergent) (r.kind == 1 ? rep.n_convergent1 : rep.n_convergent2)++;
  }
  rep.slope1 = fit_slope(x1, y1);
  rep.slope2 = fit_slope(x2, y2);
}

BigInt A_of(const EaSeq& s, long k) {
  return s.at(k).x1 * s.at(k + 2).x2 - s.eps(k) * sgn_pow(k) * s.at(k + 1).x2;
}

BigInt E_of(const EaSeq& s, long k) {
  return s.at(k).x1 * s.at(k + 4).x2 -
         s.eps(k) * sgn_pow(k) * (s.a * s.at(k + 1).x0 * s.at(k + 3).x2 + s.eps(k + 1) * s.at(k + 2).x2);
}

}  // namespace

ConvergentReport verify_deg3_convergents(const EaSeq& seq, const EaLimit& lim, const IntPoly& R, int l,
                                         long k_lo, long k_hi) {
  if (R.degree() != 3) throw Error(Errc::PreconditionViolated, "verify_deg3_convergents needs deg R = 3");
  if (l < 0 || l > 2) throw Error(Errc::InvalidArgument, "l must be 0, 1 or 2");
  if (k_hi + 4 > seq.last()) throw Error(Errc::InsufficientTail, "needs x up to k_hi + 4");
  ConvergentReport rep;
  rep.R = R;
  rep.l = l;
  rep.limit = class_limit(seq, lim, R, l, nullptr);
  ContinuedFraction cf = cf_certified(rep.limit, 1u << 20);
  std::map<BigRat, bool> convs;
  for (const auto& c : cf.convergents) convs[c] = true;
  const BigInt g = R.leading();
  for (long k = std::max(k_lo, 2L); k <= k_hi; ++k) {
    const int cls = static_cast<int>(((k - l) % 3 + 3) % 3);
    if (cls == 0) continue;
    const BigInt& x0 = seq.at(k).x0;
    const BigInt sg = sgn_pow(k);
    ConvergentRow row;
    row.k = k;
    row.den = x0;
    if (cls == 1) {
      row.kind = 1;
      BigInt A = A_of(seq, k);
      Abc m = abc(seq, k + 1);
      BigInt rhs = seq.eps(k + 1) * (-sg) * (m.b * seq.at(k + 2).x2 + m.c * seq.at(k + 2).x1);
      rep.exact.add("A_from_minors", k, A == rhs, A.get_str(), rhs.get_str());
      BigInt gA = gcd(x0, A);
      rep.exact.add("gcd_x0_A_divides_2", k, divides(gA, 2), gA.get_str(), "2");
      BigInt B = round_rat(make_rat(g * A, x0));
      row.num = g * A - B * x0;
    } else {
      row.kind = 2;
      BigInt E = E_of(seq, k);
      BigInt T = seq.at(k).x1 * seq.at(k + 1).x2 + sg * seq.at(k + 2).x2;
      BigInt A = A_of(seq, k);
      BigInt closed = seq.a * seq.at(k + 3).x2 * seq.at(k + 2).x1 * x0 - seq.eps(k + 2) * T;
      rep.exact.add("E_closed_form", k, E == closed, E.get_str(), closed.get_str());
      BigInt tx = T * seq.at(k).x1, trhs = x0 * seq.at(k).x2 * seq.at(k + 1).x2 + sg * A;
      rep.exact.add("T_times_x1", k, tx == trhs, tx.get_str(), trhs.get_str());
      BigInt gE = gcd(x0, E);
      rep.exact.add("gcd_x0_E_divides_2", k, divides(gE, 2), gE.get_str(), "2");
      BigInt F = round_rat(make_rat(g * E, x0));
      row.num = g * E - F * x0;
    }
    rep.exact.add("numerator_nonzero", k, row.num != 0, row.num.get_str());
    BigInt gy = gcd(row.num, x0);
    rep.exact.add("gcd_num_x0_divides_2g", k, divides(gy, 2 * g), gy.get_str(), BigInt(2 * g).get_str());
    finish_row(row, rep.limit, convs, seq);
    rep.rows.push_back(row);
  }
  fit_rows(rep);
  return rep;
}

ConvergentReport verify_deg4_accumulation(const EaSeq& seq, const EaLimit& lim, const IntPoly& R, int l,
                                          long k_lo, long k_hi) {
  if (R.degree() != 4) throw Error(Errc::PreconditionViolated, "verify_deg4_accumulation needs deg R = 4");
  if (l < 0 || l > 5) throw Error(Errc::InvalidArgument, "l must be in 0..5");
  if (k_hi + 4 > seq.last()) throw Error(Errc::InsufficientTail, "needs x up to k_hi + 4");
  ConvergentReport rep;
  rep.R = R;
  rep.l = l;
  rep.limit = class_limit(seq, lim, R, l, nullptr);
  ContinuedFraction cf = cf_certified(rep.limit, 1u << 20);
  std::map<BigRat, bool> convs;
  for (const auto& c : cf.convergents) convs[c] = true;
  const BigInt f = R.coef(4), g = R.coef(3);
  const BigInt& a = seq.a;
  for (long k = std::max(k_lo, 3L); k <= k_hi; ++k) {
    const int cls = static_cast<int>(((k - l) % 6 + 6) % 6);
    if (cls != 4 && cls != 2) continue;
    const BigInt sg = sgn_pow(k);
    const BigInt& x0 = seq.at(k).x0;
    auto X = [&](long j, int i) -> const BigInt& { return seq.at(j)[i]; };
    ConvergentRow row;
    row.k = k;
    if (cls == 4) {
      row.kind = 1;
      const BigInt& xm = seq.at(k - 1).x0;
      BigInt Am1 = A_of(seq, k - 1), A = A_of(seq, k);
      BigInt C = xm * (X(k, 2) * X(k + 2, 2) - seq.eps(k) * a * X(k + 1, 2)) - 2 * seq.eps(k) * sg * Am1;
      BigInt diff = C + 2 * seq.eps(k) * sg * Am1;
      rep.exact.add("C_congruence", k, divides(xm, diff), diff.get_str(), xm.get_str());
      BigInt top = f * C + g * xm * A;
      row.den = xm * x0;
      BigInt D = round_rat(make_rat(top, row.den));
      row.num = top - D * row.den;
    } else {
      row.kind = 2;
      BigInt A = A_of(seq, k), E = E_of(seq, k);
      BigInt G = X(k, 2) * X(k + 4, 2) -
                 seq.eps(k) * a *
                     (a * X(k + 1, 0) * X(k + 3, 2) + 2 * sg * X(k + 1, 1) * X(k + 3, 2) +
                      seq.eps(k + 1) * X(k + 2, 2));
      BigInt N = x0 * G - 2 * sg * seq.eps(k + 2) * A;
      BigInt diff = N + 2 * sg * seq.eps(k + 2) * A;
      rep.exact.add("N_congruence", k, divides(x0, diff), diff.get_str(), x0.get_str());
      BigInt top = f * N + g * x0 * E;
      row.den = x0 * x0;
      BigInt L = round_rat(make_rat(top, row.den));
      row.num = top - L * row.den;
    }
    rep.exact.add("numerator_nonzero", k, row.num != 0, row.num.get_str());
    finish_row(row, rep.limit, convs, seq);
    rep.rows.push_back(row);
  }
  fit_rows(rep);
  return rep;
}

namespace {

RealBall gamma_pow(const RealBall& h, long bits) { return pow(h, golden_ratio(bits)); }

// |R(xi) + P(xi)| H(P)^gamma as a ball; P given low-first as (p0, p1, p2).
RealBall alt0_value(const RealBall& rxi, const RealBall& xi, const BigInt& p0, const BigInt& p1,
                    const BigInt& p2) {
  RealBall v = (rxi + (xi * p1) + (xi.sqr() * p2) + p0).abs();
  BigInt H = std::max({::abs(p0), ::abs(p1), ::abs(p2)});
  return v * gamma_pow(RealBall::exact(H, xi.bits()), xi.bits());
}

}  // namespace

Alt0Report alt0_scan(const EaSeq& seq, const EaLimit& lim, const IntPoly& R, const Alt0Config& cfg) {
  if (R.degree() != 3 && R.degree() != 4) throw Error(Errc::PreconditionViolated, "alt0_scan needs deg R in {3, 4}");
  Alt0Report rep;
  rep.R = R;
  const long bits = 256;
  RealBall xi = ea_xi(seq, lim, bits);
  RealBall rxi = eval(R, xi);
  const double xf = xi.mid(), x2 = xf * xf, rf = rxi.mid();

  // Exhaustive box.
  const long E = cfg.exhaustive_height;
  rep.exhaustive_height = E;
  std::vector<double> hg(static_cast<size_t>(E) + 1);
  for (long h = 0; h <= E; ++h) hg[static_cast<size_t>(h)] = std::pow(static_cast<double>(h), kGamma);
  double best = INFINITY;
  long b0 = 0, b1 = 0, b2 = 0;
  for (long p2 = -E; p2 <= E; ++p2)
    for (long p1 = -E; p1 <= E; ++p1) {
      double base = rf + p1 * xf + p2 * x2;
      long h12 = std::max(std::labs(p1), std::labs(p2));
      for (long p0 = -E; p0 <= E; ++p0) {
        if (p0 == 0 && p1 == 0 && p2 == 0) continue;
        long h = std::max(h12, std::labs(p0));
        double v = std::fabs(base + p0) * hg[static_cast<size_t>(h)];
        if (v < best) {
          best = v;
          b0 = p0;
          b1 = p1;
          b2 = p2;
        }
      }
    }
  rep.exhaustive_min = alt0_value(rxi, xi, b0, b1, b2);
  rep.exhaustive_argmin = {b2, b1, b0};

  // Decades [10^d, 10^(d+1)).
  std::mt19937_64 rng(cfg.seed);
  std::vector<double> dx, dy;
  long d = 1;
  for (long lo = 10; lo < cfg.max_height; lo *= 10, ++d) {
    const long hi = lo * 10;
    Alt0Decade dec;
    dec.lo = lo;
    dec.hi = hi;
    std::uniform_int_distribution<long> pick2(lo, hi - 1);
    const long span = std::min(hi - 1, 10000L);
    std::uniform_int_distribution<long> start(-(hi - 1), hi - 1 - 2 * span);
    double dbest = INFINITY;
    long c0 = 0, c1 = 0, c2 = 0;
    for (long s = 0; s < cfg.samples_per_decade; ++s) {
      long p2 = pick2(rng) * ((rng() & 1) ? 1 : -1);
      long from = (2 * span >= 2 * (hi - 1)) ? -(hi - 1) : start(rng);
      for (long p1 = from; p1 <= from + 2 * span; ++p1) {
        double base = rf + p1 * xf + p2 * x2;
        long p0 = -std::llround(base);
        long h = std::max({std::labs(p0), std::labs(p1), std::labs(p2)});
        if (h >= hi) continue;
        double v = std::fabs(base + p0) * std::pow(static_cast<double>(h), kGamma);
        ++dec.samples;
        if (v < dbest) {
          dbest = v;
          c0 = p0;
          c1 = p1;
          c2 = p2;
        }
      }
    }
    dec.best = alt0_value(rxi, xi, c0, c1, c2);
    dec.best_p = {c2, c1, c0};
    dx.push_back(static_cast<double>(d));
    dy.push_back(std::log10(dec.best.mid()));
    rep.decades.push_back(dec);
  }
  rep.decade_slope = fit_slope(dx, dy);

  RealBall expo = golden_ratio(bits).pow(5) + BigInt(1);
  auto r_val = [&](const IntPoly& q) {
    return eval(q, xi).abs() * pow(RealBall::exact(q.height(), bits), expo);
  };
  rep.r_value = r_val(R);
  const long h = cfg.r_grid_height;
  bool first = true;
  for (int deg = 3; deg <= 4; ++deg) {
    std::vector<long> c(static_cast<size_t>(deg) + 1, -h);
    c[static_cast<size_t>(deg)] = 1;
    while (true) {
      std::vector<BigInt> cc(c.begin(), c.end());
      IntPoly q(cc);
      RealBall v = r_val(q);
      rep.r_grid.push_back({q, v});
      rep.r_grid_min = first ? v : RealBall::min(rep.r_grid_min, v);
      first = false;
      size_t i = 0;
      while (i < c.size()) {
        long cap = h;
        if (++c[i] <= cap) break;
        c[i] = (i == static_cast<size_t>(deg)) ? 1 : -h;
        ++i;
      }
      if (i == c.size()) break;
    }
  }
  return rep;
}

BandReport alt1_band(const EaSeq& seq, const EaLimit& lim, const IntPoly& R, long k_lo, long k_hi) {
  BandReport rep;
  FracSeries s = frac_series(seq, lim, R, k_lo, k_hi);
  const double e = 2.0 / (kGamma * kGamma);
  std::vector<double> lx, ly;
  rep.min_scaled = INFINITY;
  rep.pass = true;
  for (const auto& r : s.rows) {
    double lv = r.value.log_mid();
    double lX = log_abs(seq.X(r.k));
    double scaled = std::exp(lv + e * lX);
    rep.rows.push_back({r.k, r.value, scaled});
    rep.min_scaled = std::min(rep.min_scaled, scaled);
    if (!r.value.positive()) rep.pass = false;
    lx.push_back(lX);
    ly.push_back(lv);
  }
  rep.fitted_exponent = fit_slope(lx, ly);
  rep.pass = rep.pass && rep.min_scaled > 0;
  return rep;
}

W2Report w2_candidate_check(const EaSeq& seq, const EaLimit& lim, long k_lo, long k_hi) {
  W2Report rep;
  long bits = 2 * log2_ceil(seq.X(k_hi)) + 64;
  RealBall xi = ea_xi(seq, lim, bits);
  const double g3 = kGamma * kGamma * kGamma;
  std::vector<double> lh, lq;
  double mn = INFINITY, mx = 0;
  double prev_logH = NAN;
  rep.max_height_ratio = 0;
  for (long k = k_lo; k <= k_hi; ++k) {
    const Point3& x = seq.at(k);
    IntPoly Q({x.x2, BigInt(-2 * x.x1), x.x0});
    RealBall v = eval(Q, xi).abs();
    double logH = log_abs(Q.height());
    double lv = v.log_mid();
    double scaled = std::exp(lv + g3 * logH);
    rep.rows.push_back({k, v, scaled});
    lh.push_back(logH);
    lq.push_back(lv);
    mn = std::min(mn, scaled);
    mx = std::max(mx, scaled);
    if (std::isfinite(prev_logH)) rep.max_height_ratio = std::max(rep.max_height_ratio, std::exp(logH - kGamma * prev_logH));
    prev_logH = logH;
  }
  rep.decay_exponent = fit_slope(lh, lq);
  rep.band_pass = mn > 0 && mx <= 1000 * mn;
  return rep;
}

}  // namespace dioph
