#include "dioph/fib.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numeric>

#include "dioph/error.hpp"

namespace dioph {

namespace {

std::string mat_str(const Mat2& m) {
  return "[[" + m.a.get_str() + "," + m.b.get_str() + "],[" + m.c.get_str() + "," + m.d.get_str() + "]]";
}

BigInt mod(const BigInt& v, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

const double kGamma = (1.0 + std::sqrt(5.0)) / 2.0;

}  // namespace

FibSeq make_fib(const Mat2& w0, const Mat2& w1, const Mat2& N, std::string name) {
  FibSeq s;
  s.name = std::move(name);
  s.N = N;
  s.w = {w0, w1};
  for (size_t i = 0; i < 2; ++i) {
    Mat2 yi = s.w[i] * s.N_at(i);
    if (!yi.symmetric()) throw Error(Errc::AdmissibilityViolation, "y_" + std::to_string(i) + " not symmetric");
    s.y.push_back(Point3::from_symmetric(yi));
  }
  extend_fib(s, 2);
  return s;
}

void extend_fib(FibSeq& s, int upto) {
  while (s.last() < upto) {
    size_t i = s.w.size();
    s.w.push_back(s.w[i - 1] * s.w[i - 2]);
    Mat2 yi = s.w[i] * s.N_at(i);
    if (!yi.symmetric()) throw Error(Errc::AdmissibilityViolation, "y_" + std::to_string(i) + " not symmetric");
    s.y.push_back(Point3::from_symmetric(yi));
  }
}

FibSeq real_example(const BigInt& a, const BigInt& b, const BigInt& c) {
  if (a < 2 || b < 1 || c <= b) throw Error(Errc::InvalidArgument, "real_example needs a >= 2, c > b >= 1");
  Mat2 w0{1, b, a, a * (b + 1)};
  Mat2 w1{1, c, a, a * (c + 1)};
  Mat2 N{-1 + a * (b + 1) * (c + 1), -a * (b + 1), -a * (c + 1), a};
  return make_fib(w0, w1, N,
                  "real_example(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")");
}

FibSeq padic_example(const BigInt& p, unsigned long m) {
  if (!is_prime(p) || m < 1) throw Error(Errc::InvalidArgument, "padic_example needs a prime p and m >= 1");
  auto P = [&](unsigned long e) { return pow(p, e); };
  Mat2 w0{1, p, p, 0};
  Mat2 w1{1, P(m), -P(m), 0};
  Mat2 N{p * (P(m + 1) + P(2 * m)), -p * (p + P(m) - 2 * P(2 * m + 1)),
         -P(m + 1) - 2 * P(2 * m + 2) - P(2 * m), p + P(m + 2) + P(m) - P(2 * m + 1)};
  return make_fib(w0, w1, N, "padic_example(" + p.get_str() + "," + std::to_string(m) + ")");
}

BigInt fib_det_triple(const FibSeq& s) { return det3(s.y.at(0), s.y.at(1), s.y.at(2)); }

BigInt real_example_det_triple(const BigInt& a, const BigInt&b, const BigInt& c) {
  return pow(a, 4) * (c - b);
}

BigInt padic_example_det_triple(const BigInt& p, unsigned long m) {
  auto P = [&](unsigned long e) { return pow(p, e); };
  return P(8 * m + 4) * (16 * P(4) + 8 * P(2) + 1) - 2 * P(6 * m + 6) * (4 * P(2) + 1) + P(4 * m + 8);
}

BigInt fibonacci(long i) {
  if (i < -1) throw Error(Errc::InvalidArgument, "fibonacci index < -1");
  BigInt prev = 1, cur = 0;  // f_{-1}, f_0
  for (long j = 0; j < i; ++j) {
    BigInt next = cur + prev;
    prev = cur;
    cur = next;
  }
  return i == -1 ? BigInt(1) : cur;
}

Report verify_fib_symmetry(const FibSeq& s) {
  Report r;
  for (size_t i = 0; i < s.w.size(); ++i) {
    Mat2 yi = s.w[i] * s.N_at(i);
    r.add("y_symmetric", static_cast<long>(i), yi.symmetric(), mat_str(yi));
  }
  return r;
}

Report verify_det_multiplicative(const FibSeq& s) {
  Report r;
  const BigInt d0 = s.w[0].det(), d1 = s.w[1].det();
  for (size_t i = 2; i < s.w.size(); ++i) {
    BigInt lhs = s.w[i].det(), rhs = s.w[i - 1].det() * s.w[i - 2].det();
    r.add("det_multiplicative", static_cast<long>(i), lhs == rhs, lhs.get_str(), rhs.get_str());
  }
  for (size_t i = 0; i < s.w.size(); ++i) {
    long li = static_cast<long>(i);
    BigInt e0 = fibonacci(li - 1), e1 = fibonacci(li);
    // Exponents are Fibonacci numbers; negative bases are handled through parity.
    BigInt rhs = pow(d0, e0.get_ui()) * pow(d1, e1.get_ui());
    BigInt lhs = s.w[i].det();
    r.add("det_fibonacci_power", li, lhs == rhs, lhs.get_str(), rhs.get_str());
  }
  return r;
}

Report verify_sandwich(const FibSeq& s, int imax) {
  Report r;
  for (int i = 0; i <= imax && i + 2 <= s.last(); ++i) {
    BigInt lo = s.w[i].sup_norm() * s.w[i + 1].sup_norm();
    BigInt mid = s.w[i + 2].sup_norm();
    bool ok = lo < mid && mid <= 2 * lo;
    r.add("sandwich", i, ok, mid.get_str(), lo.get_str());
  }
  if (s.last() < imax + 2) r.add("sandwich_range", imax, false, "sequence too short");
  return r;
}

Report verify_growth(const FibSeq& s, int imin, int imax, double tol) {
  Report r;
  for (int i = imin; i <= imax; ++i) {
    if (i + 1 > s.last()) {
      r.add("growth_range", i, false, "sequence too short");
      break;
    }
    double ratio = log_abs(s.w[i + 1].sup_norm()) / log_abs(s.w[i].sup_norm());
    r.add("growth_ratio", i, std::abs(ratio - kGamma) <= tol, std::to_string(ratio), std::to_string(kGamma));
  }
  return r;
}

Report verify_mod_a(const FibSeq& s, const BigInt& a) {
  Report r;
  for (size_t i = 0; i < s.w.size(); ++i) {
    const Mat2& w = s.w[i];
    bool wok = mod(w.a, a) == mod(BigInt(1), a) && mod(w.c, a) == 0 && mod(w.d, a) == 0;
    r.add("w_mod_a", static_cast<long>(i), wok, mat_str(w));
    const Point3& y = s.y[i];
    bool yok = mod(y.x0, a) == mod(BigInt(-1), a) && mod(y.x1, a) == 0 && mod(y.x2, a) == 0;
    r.add("y_mod_a", static_cast<long>(i), yok, y.str());
  }
  return r;
}

Report verify_padic_preset(const FibSeq& s, const BigInt& p, int imax) {
  Report r;
  const Place inf = Place::infinity(), pl = Place::prime(p);
  for (int i = 0; i <= imax; ++i) {
    if (i > s.last()) {
      r.add("padic_range", i, false, "sequence too short");
      break;
    }
    const Mat2& w = s.w[i];
    BigRat prod = abs_at(w.det(), inf) * abs_at(w.det(), pl);
    r.add("det_product_formula", i, prod == 1, prod.get_str(), "1");
    BigRat np = sup_norm(IntVec{w.a, w.b, w.c, w.d}, pl);
    r.add("w_padic_norm_one", i, np == 1, np.get_str(), "1");
    bool m = mod(w.a, p) == 1 && mod(w.b, p) == 0 && mod(w.c, p) == 0 && mod(w.d, p) == 0;
    r.add("w_mod_p", i, m, mat_str(w));
  }
  return r;
}

DeltaSeries delta_series(const FibSeq& s, const Place& place) {
  DeltaSeries d;
  d.place = place;
  for (const Mat2& w : s.w) {
    BigRat nw = sup_norm(IntVec{w.a, w.b, w.c, w.d}, place);
    d.values.push_back(abs_at(w.det(), place) / nw);
  }
  for (size_t i = 0; i + 1 < d.values.size(); ++i) {
    double li = log_abs(d.values[i]), lj = log_abs(d.values[i + 1]);
    d.exponent_ratios.push_back(li != 0 ? lj / li : NAN);
  }
  return d;
}

FibLimit fib_limit(const FibSeq& s, const Place& place, long bits) {
  const int last = s.last();
  if (last < 6) throw Error(Errc::InsufficientTail, "need at least 7 terms");
  for (int i = last - 3; i <= last; ++i)
    if (s.y[i].x0 == 0) throw Error(Errc::FirstCoordinateZero, "y_" + std::to_string(i) + " has x0 = 0");
  auto r1 = [&](int i) { return make_rat(s.y[i].x1, s.y[i].x0); };
  auto r2 = [&](int i) { return make_rat(s.y[i].x2, s.y[i].x0); };
  FibLimit out;
  out.place = place;

  if (place.is_infinite()) {
    // |r_j - xi| <~ C delta_j / ||w_j|| with delta_j = |det w_j| / ||w_j||.
    auto scale = [&](int j) {
      BigInt n = s.w[j].sup_norm();
      return make_rat(::abs(s.w[j].det()), n * n);
    };
    BigRat C = 0;
    for (int j = 2; j <= last - 2; ++j) {
      BigRat d = std::max(abs(BigRat(r1(j) - r1(last))), abs(BigRat(r2(j) - r2(last))));
      C = std::max(C, BigRat(d / scale(j)));
    }
    C *= 10;
    if (C == 0) C = 1;
    out.C = C;
    const BigRat target = pow_p(2, -bits);
    int k = -1;
    for (int j = 2; j <= last - 2; ++j)
      if (C * scale(j) <= target) {
        k = j;
        break;
      }
    if (k < 0) throw Error(Errc::InsufficientTail, "requested precision beyond generated terms");
    // The ball at k must contain the center at k + 2.
    BigRat rad = C * scale(k);
    if (abs(BigRat(r1(k + 2) - r1(k))) > rad)
      throw Error(Errc::InsufficientTail, "tail validation failed at " + std::to_string(k));
    out.index = k;
    long wb = bits + 64;
    out.xi = RealBall::around(r1(k), rad, wb);
    out.xi2 = RealBall::around(r2(k), rad, wb);
    out.det_zero_within_radius = out.xi->sqr().overlaps(*out.xi2);
    return out;
  }

  const BigInt& p = place.p();
  // Ultrametric tail: once |r_j - r_{j+1}|_p strictly decreases, it equals
  // |r_j - xi|_p.
  std::vector<long> d;
  for (int j = 1; j < last; ++j) {
    BigRat diff = r1(j) - r1(j + 1);
    d.push_back(diff == 0 ? LONG_MAX / 4 : valuation(diff, p));
  }
  int n = static_cast<int>(d.size());
  if (!(d[n - 1] > d[n - 2] && d[n - 2] > d[n - 3]))
    throw Error(Errc::InsufficientTail, "p-adic tail not yet strictly contracting");
  long prec = d[n - 2];  // |r_{last-1} - xi|_p
  out.index = last;
  out.xi_p = PadicNumber::from_rat(r1(last), p, prec);
  PadicNumber sq = PadicNumber::from_rat(r2(last), p, prec);
  out.det_zero_within_radius = (out.xi_p->pow(2) - sq).is_zero();
  BigRat C = 0;
  for (int j = 2; j <= last - 2; ++j) {
    BigRat dj = abs_at(BigRat(r1(j) - r1(last)), place);
    BigRat sc = abs_at(s.w[j].det(), place);
    if (sc != 0) C = std::max(C, BigRat(dj / sc));
  }
  out.C = C * 10;
  (void)bits;
  return out;
}

// ---- E_a ----

const Point3& EaSeq::at(long k) const {
  if (k < 1 || k > last()) throw Error(Errc::InvalidArgument, "index " + std::to_string(k) + " not generated");
  return x[static_cast<size_t>(k)];
}

Mat2 ea_S(const BigInt& a, long k) {
  Mat2 M{a, 1, -1, 0};
  return k % 2 == 0 ? M : M.transposed();
}

namespace {

bool unimodular(const Point3& p) { return ::abs(p.det()) == 1; }

// Forward check used by the seed search.
bool seed_ok(const BigInt& a, const Point3& x1, const Point3& x2) {
  std::vector<Point3> x{Point3{}, x1, x2};
  for (long k = 2; k < 8; ++k) {
    Mat2 m = x[k].matrix() * ea_S(a, k) * x[k - 1].matrix();
    if (!m.symmetric()) return false;
    Point3 nx = Point3::from_symmetric(m);
    if (!unimodular(nx)) return false;
    x.push_back(nx);
  }
  for (long k = 1; k <= 6; ++k)
    if (::abs(det3(x[k], x[k + 1], x[k + 2])) != 2) return false;
  for (long k = 3; k <= 8; ++k)
    if (x[k].x0 <= 0 || x[k].x0 != x[k].sup_norm()) return false;
  return true;
}

}  // namespace

std::pair<Point3, Point3> find_ea_seed(const BigInt& a, int bound) {
  if (a < 1) throw Error(Errc::InvalidArgument, "a must be >= 1");
  std::vector<Point3> pts;
  for (long i = 0; i <= bound; ++i)
    for (long j = 0; j <= bound; ++j)
      for (long k = 0; k <= bound; ++k) {
        Point3 p{i, j, k};
        if (unimodular(p)) pts.push_back(p);
      }
  for (const auto& x1 : pts)
    for (const auto& x2 : pts)
      if (seed_ok(a, x1, x2)) return {x1, x2};
  throw Error(Errc::NoSeedFound, "no seed with entries in [0, " + std::to_string(bound) + "]");
}

EaSeq make_ea(const BigInt& a, const Point3& x1, const Point3& x2) {
  if (!unimodular(x1) || !unimodular(x2)) throw Error(Errc::SeedInvalid, "seed points must be unimodular");
  EaSeq s{a, {Point3{}, x1, x2}};
  return s;
}

void extend_ea(EaSeq& s, int upto) {
  while (s.last() < upto) {
    long k = s.last();
    Mat2 m = s.x[k].matrix() * ea_S(s.a, k) * s.x[k - 1].matrix();
    if (!m.symmetric()) throw Error(Errc::SeedInvalid, "x_" + std::to_string(k + 1) + " not symmetric");
    Point3 nx = Point3::from_symmetric(m);
    if (!unimodular(nx)) throw Error(Errc::SeedInvalid, "x_" + std::to_string(k + 1) + " not unimodular");
    s.x.push_back(nx);
  }
}

Abc abc(const EaSeq& s, long k) {
  const Point3 &u = s.at(k), &v = s.at(k + 1);
  return {u.x0 * v.x1 - u.x1 * v.x0, -(u.x0 * v.x2 - u.x2 * v.x0), u.x1 * v.x2 - u.x2 * v.x1};
}

Report verify_identities(const EaSeq& s, long k_lo, long k_hi) {
  Report r;
  if (k_lo < 2 || k_hi + 4 > s.last()) {
    r.add("range", k_hi, false, "needs x_" + std::to_string(k_lo - 1) + "..x_" + std::to_string(k_hi + 4));
    return r;
  }
  const BigInt& a = s.a;
  const Mat2 J = Mat2::J();
  auto X = [&](long k, int i) -> const BigInt& { return s.at(k)[i]; };
  auto e = [&](long k) { return s.eps(k); };
  for (long k = k_lo; k <= k_hi; ++k) {
    const BigInt sg = (k % 2 == 0) ? 1 : -1;  // (-1)^k
    const BigInt ek = e(k);
    auto eq = [&](const char* name, const BigInt& l, const BigInt& rr) {
      r.add(name, k, l == rr, l.get_str(), rr.get_str());
    };
    auto eqp = [&](const char* name, const Point3& l, const Point3& rr) {
      r.add(name, k, l == rr, l.str(), rr.str());
    };
    auto eqm = [&](const char* name, const Mat2& l, const Mat2& rr) {
      r.add(name, k, l == rr, mat_str(l), mat_str(rr));
    };

    const Point3& xk = s.at(k);
    r.add("symmetric", k, xk.matrix().symmetric(), xk.str());
    eq("unimodular", ::abs(ek), 1);
    eq("eps_period3", e(k + 3), ek);
    eq("eps_product", e(k + 2), e(k + 1) * ek);
    eq("det_triple", det3(s.at(k - 1), xk, s.at(k + 1)), 2 * e(k + 1) * (-sg));

    // x_{k+2} = tr(x_k S_k) x_{k+1} - det(x_k S_k) x_{k-1}
    Mat2 xs = xk.matrix() * ea_S(a, k);
    eqp("trace_recurrence", s.at(k + 2), xs.trace() * s.at(k + 1) - xs.det() * s.at(k - 1));
    eqm("jx_shift1", xk.matrix() * J * s.at(k + 1).matrix(), ek * (J * ea_S(a, k) * s.at(k - 1).matrix()));
    eqp("three_term", s.at(k + 2), a * X(k, 0) * s.at(k + 1) - ek * s.at(k - 1));

    eq("shift1_minor_a", X(k, 0) * X(k + 1, 1), X(k, 1) * X(k + 1, 0) - ek * sg * X(k - 1, 0));
    eq("shift1_minor_b", X(k, 1) * X(k + 1, 2), X(k, 2) * X(k + 1, 1) - ek * (a * X(k - 1, 1) + sg * X(k - 1, 2)));
    eq("shift1_minor_c", X(k, 0) * X(k + 1, 2), X(k, 1) * X(k + 1, 1) - ek * sg * X(k - 1, 1));
    eq("shift1_minor_d", X(k, 1) * X(k + 1, 1), X(k, 2) * X(k + 1, 0) - ek * (a * X(k - 1, 0) + sg * X(k - 1, 1)));
    eq("shift1_minor_e", X(k, 0) * X(k + 1, 2),
       X(k, 2) * X(k + 1, 0) - ek * (a * X(k - 1, 0) + 2 * sg * X(k - 1, 1)));

    eqm("jx_shift2", xk.matrix() * J * s.at(k + 2).matrix(), ek * (J * ea_S(a, k) * s.at(k + 1).matrix()));
    eq("shift2_minor_a", X(k, 0) * X(k + 2, 1), X(k, 1) * X(k + 2, 0) - ek * sg * X(k + 1, 0));
    eq("shift2_minor_b", X(k, 0) * X(k + 2, 2), X(k, 1) * X(k + 2, 1) - ek * sg * X(k + 1, 1));
    eq("shift2_minor_c", X(k, 1) * X(k + 2, 1), X(k, 2) * X(k + 2, 0) - ek * (a * X(k + 1, 0) + sg * X(k + 1, 1)));
    eq("shift2_minor_d", X(k, 1) * X(k + 2, 2), X(k, 2) * X(k + 2, 1) - ek * (a * X(k + 1, 1) + sg * X(k + 1, 2)));
    eq("shift2_minor_e", X(k, 0) * X(k + 2, 2),
       X(k, 2) * X(k + 2, 0) - ek * (a * X(k + 1, 0) + 2 * sg * X(k + 1, 1)));

    eq("shift4_a", X(k, 0) * X(k + 4, 2),
       X(k, 1) * X(k + 4, 1) - ek * sg * (a * X(k + 1, 0) * X(k + 3, 1) + e(k + 1) * X(k + 2, 1)));
    eq("shift4_b", X(k, 1) * X(k + 4, 2),
       X(k, 2) * X(k + 4, 1) -
           ek * (a * (a * X(k + 1, 0) + sg * X(k + 1, 1)) * X(k + 3, 1) + sg * e(k + 1) * X(k + 2, 2)));

    Abc m = abc(s, k);
    eq("abc_closed_form_a", m.a, ek * (-sg) * X(k - 1, 0));
    eq("abc_closed_form_b", m.b, ek * (a * X(k - 1, 0) + 2 * sg * X(k - 1, 1)));
    eq("abc_closed_form_c", m.c, ek * (-a * X(k - 1, 1) - sg * X(k - 1, 2)));

    BigInt g1 = gcd(m.a, m.b);
    BigInt g2 = gcd(m.a, BigInt(m.b * X(k + 1, 2) + m.c * X(k + 1, 1)));
    r.add("gcd_ab_divides_2", k, g1 != 0 && 2 % g1 == 0, g1.get_str(), "2");
    r.add("gcd_mixed_divides_2", k, g2 != 0 && 2 % g2 == 0, g2.get_str(), "2");
  }
  return r;
}

BigRat ea_ratio(const EaSeq& s, long k) {
  const Point3& p = s.at(k);
  if (p.x0 == 0) throw Error(Errc::FirstCoordinateZero, "x_" + std::to_string(k) + " has x0 = 0");
  return make_rat(p.x1, p.x0);
}

EaLimit ea_limit(const EaSeq& s) {
  const int last = s.last();
  if (last < 7) throw Error(Errc::InsufficientTail, "need x_1..x_7 at least");
  EaLimit lim;
  lim.fit_from = 3;
  lim.fit_to = last - 2;
  BigRat rl = ea_ratio(s, last), C = 0;
  for (int j = lim.fit_from; j <= lim.fit_to; ++j) {
    BigInt Xj = s.X(j);
    C = std::max(C, BigRat(abs(BigRat(ea_ratio(s, j) - rl)) * Xj * Xj));
  }
  lim.C = C * 10;
  return lim;
}

RealBall ea_ball(const EaSeq& s, const EaLimit& lim, long k, long bits) {
  BigInt Xk = s.X(k);
  return RealBall::around(ea_ratio(s, k), lim.C / BigRat(Xk * Xk), bits);
}

RealBall ea_xi(const EaSeq& s, const EaLimit& lim, long bits) {
  const BigRat target = pow_p(2, -bits);
  for (long k = 3; k <= s.last() - 2; ++k) {
    BigInt Xk = s.X(k);
    if (lim.C / BigRat(Xk * Xk) <= target) return ea_ball(s, lim, k, bits + 64);
  }
  throw Error(Errc::InsufficientTail, "xi to 2^-" + std::to_string(bits) + " needs more terms");
}

}  // namespace dioph
