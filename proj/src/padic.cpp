#include "dioph/padic.hpp"

#include <algorithm>
#include <climits>

#include "dioph/error.hpp"

namespace dioph {

namespace {

// Absolute precision used for exactly known integers.
constexpr long kExact = 1L << 40;

BigInt pk(const BigInt& p, long k) { return pow(p, static_cast<unsigned long>(std::max(0L, k))); }

BigInt mod_pos(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt inv_mod(const BigInt& a, const BigInt& m) {
  BigInt r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw Error(Errc::InvalidArgument, "non-invertible residue");
  return r;
}

long clamp_add(long a, long b) {
  long s = a + b;
  return std::min(s, kExact);
}

// An exact integer carried with `rel` digits of relative precision, enough
// that it never limits a product with an operand of that precision.
PadicNumber exact_int(const BigInt& k, const BigInt& p, long rel) {
  if (k == 0) return PadicNumber::zero(p, kExact);
  return PadicNumber::from_int(k, p, dioph::valuation(k, p) + std::max(rel, 1L));
}

}  // namespace

PadicNumber PadicNumber::zero(const BigInt& p, long abs_prec) {
  PadicNumber x;
  x.p_ = p;
  x.zero_ = true;
  x.v_ = std::min(abs_prec, kExact);
  x.unit_ = 0;
  x.n_ = 0;
  return x;
}

PadicNumber PadicNumber::make(const BigInt& p, long valuation, const BigInt& unit, long precision) {
  if (precision <= 0) return zero(p, valuation);
  BigInt u = mod_pos(unit, pk(p, precision));
  if (u == 0 || mpz_divisible_p(u.get_mpz_t(), p.get_mpz_t()))
    throw Error(Errc::InvalidArgument, "padic unit divisible by p");
  PadicNumber x;
  x.p_ = p;
  x.zero_ = false;
  x.v_ = valuation;
  x.unit_ = u;
  x.n_ = precision;
  return x;
}

PadicNumber PadicNumber::from_int(const BigInt& v, const BigInt& p, long abs_prec) {
  return from_rat(BigRat(v), p, abs_prec);
}

PadicNumber PadicNumber::from_rat(const BigRat& q, const BigInt& p, long abs_prec) {
  if (q == 0) return zero(p, abs_prec);
  long v = dioph::valuation(q, p);
  if (v >= abs_prec) return zero(p, abs_prec);
  BigInt num = q.get_num(), den = q.get_den();
  BigInt pp = p;
  mpz_remove(num.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t());
  mpz_remove(den.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
  long n = abs_prec - v;
  BigInt m = pk(p, n);
  BigInt u = mod_pos(num * inv_mod(den, m), m);
  return make(p, v, u, n);
}

BigRat PadicNumber::abs() const {
  if (zero_ && v_ >= kExact) return 0;
  return pow_p(p_, -v_);
}

BigRat PadicNumber::value() const {
  if (zero_) return 0;
  return BigRat(unit_) * pow_p(p_, v_);
}

BigInt PadicNumber::residue(long k) const {
  if (k > abs_precision())
    throw Error(Errc::InsufficientPrecision, "residue beyond known precision");
  if (zero_) return 0;
  if (v_ < 0) throw Error(Errc::PreconditionViolated, "residue of a non-integral p-adic number");
  return mod_pos(unit_ * pk(p_, v_), pk(p_, k));
}

PadicNumber PadicNumber::truncate(long abs_prec) const {
  abs_prec = std::min(abs_prec, abs_precision());
  if (zero_ || v_ >= abs_prec) return zero(p_, abs_prec);
  return make(p_, v_, unit_, abs_prec - v_);
}

bool PadicNumber::agrees(const PadicNumber& o, long k) const {
  k = std::min({k, abs_precision(), o.abs_precision()});
  BigRat d = value() - o.value();
  return d == 0 || dioph::valuation(d, p_) >= k;
}

PadicNumber operator+(const PadicNumber& x, const PadicNumber& y) {
  if (x.p_ != y.p_) throw Error(Errc::InvalidArgument, "mixed primes");
  long a = std::min(x.abs_precision(), y.abs_precision());
  return PadicNumber::from_rat(x.value() + y.value(), x.p_, a);
}

PadicNumber operator-(const PadicNumber& x, const PadicNumber& y) { return x + (-y); }

PadicNumber operator-(const PadicNumber& x) {
  if (x.zero_) return x;
  return PadicNumber::make(x.p_, x.v_, -x.unit_, x.n_);
}

PadicNumber operator*(const PadicNumber& x, const PadicNumber& y) {
  if (x.p_ != y.p_) throw Error(Errc::InvalidArgument, "mixed primes");
  if (x.zero_ || y.zero_) {
    // v_ is the valuation, or the absolute precision of a zero marker.
    return PadicNumber::zero(x.p_, clamp_add(x.v_, y.v_));
  }
  long n = std::min(x.n_, y.n_);
  return PadicNumber::make(x.p_, x.v_ + y.v_, x.unit_ * y.unit_, n);
}

PadicNumber operator/(const PadicNumber& x, const PadicNumber& y) {
  if (x.p_ != y.p_) throw Error(Errc::InvalidArgument, "mixed primes");
  if (y.zero_) throw Error(Errc::InsufficientPrecision, "division by a p-adic zero marker");
  if (x.zero_) return PadicNumber::zero(x.p_, x.v_ - y.v_);
  long n = std::min(x.n_, y.n_);
  BigInt m = pk(x.p_, n);
  return PadicNumber::make(x.p_, x.v_ - y.v_, x.unit_ * inv_mod(y.unit_, m), n);
}

PadicNumber PadicNumber::pow(unsigned long e) const {
  PadicNumber r = exact_int(1, p_, zero_ ? 1 : n_);
  PadicNumber b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

PadicNumber PadicNumber::operator*(const BigInt& k) const {
  return *this * exact_int(k, p_, zero_ ? 1 : n_);
}
PadicNumber PadicNumber::operator+(const BigInt& k) const {
  if (zero_ && v_ >= kExact) return exact_int(k, p_, 256);
  return *this + from_int(k, p_, abs_precision());
}

std::string PadicNumber::str() const {
  if (zero_) return "O(" + p_.get_str() + "^" + std::to_string(v_) + ")";
  return p_.get_str() + "^" + std::to_string(v_) + "*" + unit_.get_str() + " + O(" + p_.get_str() +
         "^" + std::to_string(abs_precision()) + ")";
}

PadicPoint moment_vector(const PadicNumber& xi, int n) {
  PadicPoint t;
  PadicNumber acc = exact_int(1, xi.p(), xi.abs_precision() + 1);
  for (int l = 0; l <= n; ++l) {
    t.push_back(acc);
    acc = acc * xi;
  }
  return t;
}

PadicNumber eval(const IntPoly& f, const PadicNumber& t) {
  const long rel = t.abs_precision() + static_cast<long>(f.c.size()) * std::abs(t.valuation()) + 1;
  if (f.is_zero()) return PadicNumber::zero(t.p(), kExact);
  PadicNumber acc = exact_int(f.c.back(), t.p(), rel);
  for (auto it = f.c.rbegin() + 1; it != f.c.rend(); ++it)
    acc = acc * t + exact_int(*it, t.p(), rel);
  return acc;
}

BigRat padic_dist(const std::vector<BigRat>& u, const std::vector<BigRat>& v, const BigInt& p) {
  if (u.size() != v.size()) throw Error(Errc::InvalidArgument, "dimension mismatch");
  const Place pl = Place::prime(p);
  BigRat nu = 0, nv = 0, nw = 0;
  for (size_t i = 0; i < u.size(); ++i) {
    nu = std::max(nu, abs_at(u[i], pl));
    nv = std::max(nv, abs_at(v[i], pl));
    for (size_t j = i + 1; j < u.size(); ++j) nw = std::max(nw, abs_at(BigRat(u[i] * v[j] - u[j] * v[i]), pl));
  }
  if (nu == 0 || nv == 0) throw Error(Errc::ZeroVector, "padic_dist of a zero vector");
  return nw / (nu * nv);
}

BigRat padic_dist(const IntVec& u, const IntVec& v, const BigInt& p) {
  std::vector<BigRat> a(u.begin(), u.end()), b(v.begin(), v.end());
  return padic_dist(a, b, p);
}

namespace {

// Max of |x_i|_p; exact when the largest nonzero entry dominates every
// zero-marker bound.
struct MaxAbs {
  BigRat value;
  bool upper_bound;
  bool all_zero;
};

MaxAbs max_abs(const std::vector<PadicNumber>& xs) {
  BigRat exact = 0, bound = 0;
  bool any_nonzero = false;
  for (const auto& x : xs) {
    if (x.is_zero()) bound = std::max(bound, x.abs());
    else {
      exact = std::max(exact, x.abs());
      any_nonzero = true;
    }
  }
  if (any_nonzero && exact >= bound) return {exact, false, false};
  return {std::max(exact, bound), true, !any_nonzero};
}

}  // namespace

BigRat sup_norm(const PadicPoint& x) {
  MaxAbs m = max_abs(x);
  if (m.upper_bound) throw Error(Errc::InsufficientPrecision, "p-adic norm not determined");
  return m.value;
}

PadicDist padic_dist(const PadicPoint& u, const PadicPoint& v) {
  if (u.size() != v.size()) throw Error(Errc::InvalidArgument, "dimension mismatch");
  MaxAbs mu = max_abs(u), mv = max_abs(v);
  if (mu.all_zero || mv.all_zero) throw Error(Errc::ZeroVector, "padic_dist of a zero vector");
  if (mu.upper_bound || mv.upper_bound)
    throw Error(Errc::InsufficientPrecision, "p-adic norm not determined");
  std::vector<PadicNumber> minors;
  for (size_t i = 0; i < u.size(); ++i)
    for (size_t j = i + 1; j < u.size(); ++j) minors.push_back(u[i] * v[j] - u[j] * v[i]);
  MaxAbs mw = max_abs(minors);
  return {mw.value / (mu.value * mv.value), mw.upper_bound};
}

PadicLForm l_form(const IntVec& x, const PadicNumber& xi) {
  std::vector<PadicNumber> diffs;
  PadicNumber power = xi;
  for (size_t l = 1; l < x.size(); ++l) {
    PadicNumber approx = power * x[0];
    diffs.push_back(exact_int(x[l], xi.p(), std::min(approx.abs_precision(), xi.abs_precision()) + 1) - approx);
    power = power * xi;
  }
  MaxAbs m = max_abs(diffs);
  return {m.value, m.upper_bound};
}

HenselResult hensel_lift(const IntPoly& f, const PadicNumber& xi, long target) {
  const BigInt& p = xi.p();
  if (!xi.integral()) throw Error(Errc::PreconditionViolated, "hensel_lift needs an integral xi");
  if (f.degree() < 1) throw Error(Errc::PreconditionViolated, "hensel_lift needs deg F >= 1");
  PadicNumber fx = eval(f, xi);
  PadicNumber dfx = eval(f.derivative(), xi);
  if (dfx.is_zero()) throw Error(Errc::InsufficientPrecision, "F'(xi) vanishes to working precision");
  const long e = dfx.valuation();
  if (fx.is_zero()) {
    if (fx.valuation() <= 2 * e)
      throw Error(Errc::InsufficientPrecision, "cannot certify |F(xi)| < |F'(xi)|^2");
  } else if (fx.valuation() <= 2 * e) {
    throw Error(Errc::CriterionFails, "|F(xi)|_p >= |F'(xi)|_p^2");
  }

  const BigInt xi_rep = xi.residue();
  const long K = target + e + 2;
  const BigInt mod = pk(p, K);
  const BigInt pe = pk(p, e);
  const IntPoly df = f.derivative();
  BigInt r = mod_pos(xi_rep, mod);
  long residual = K;
  for (int iter = 0; iter < 200; ++iter) {
    BigInt fr = f.eval(r);
    if (fr == 0) {
      residual = K;
      break;
    }
    long vf = valuation(fr, p);
    if (vf >= target + e) {
      residual = vf;
      break;
    }
    BigInt d = df.eval(r);
    BigInt t = fr, u = d;
    mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), pe.get_mpz_t());
    mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), pe.get_mpz_t());
    r = mod_pos(r - t * inv_mod(mod_pos(u, mod), mod), mod);
    if (iter == 199) throw Error(Errc::InsufficientPrecision, "Newton iteration did not settle");
  }

  HenselResult h{PadicNumber::from_int(r, p, target), residual, 0, 0, 0, 0};
  const Place pl = Place::prime(p);
  BigInt fxi = f.eval(xi_rep), dfxi = df.eval(xi_rep);
  h.fxi_abs = abs_at(fxi, pl);
  h.dfxi_abs = abs_at(dfxi, pl);
  h.bound = h.fxi_abs / h.dfxi_abs;
  h.dist = abs_at(BigInt(xi_rep - r), pl);
  // r only matches alpha modulo p^target.
  if (h.dist != 0 && h.dist < pow_p(p, -target)) h.dist = pow_p(p, -target);
  return h;
}

Cleared denominator_clear(const IntPoly& f, const PadicNumber& xi) {
  if (xi.integral() || xi.is_zero()) return {f, xi, BigInt(1)};
  BigInt d = pk(xi.p(), -xi.valuation());
  const int m = f.degree();
  std::vector<BigInt> c(f.c.size());
  for (int i = 0; i <= m; ++i)
    c[static_cast<size_t>(i)] = f.c[static_cast<size_t>(i)] * pow(d, static_cast<unsigned long>(m - i));
  return {IntPoly(std::move(c)), xi * d, d};
}

BigRat strong_approx(const ArchTarget& inf, const std::vector<PadicTarget>& targets) {
  if (inf.eps <= 0) throw Error(Errc::InvalidArgument, "eps_inf must be positive");
  BigRat need(1, 2);
  BigInt D = 1, Mz = 1, M = 1, z = 0;
  std::vector<BigInt> seen;
  for (const auto& t : targets) {
    const BigInt& p = t.xi.p();
    if (std::find(seen.begin(), seen.end(), p) != seen.end())
      throw Error(Errc::InvalidArgument, "repeated prime in strong_approx");
    seen.push_back(p);
    if (t.eps <= 0) throw Error(Errc::InvalidArgument, "eps_p must be positive");
    need *= BigRat(p) / t.eps;
    // p^(-n-1) <= eps < p^(-n)
    long n = 0;
    while (pow_p(p, -n) <= t.eps) --n;
    while (pow_p(p, -n - 1) > t.eps) ++n;
    long m = std::max(n + 1, 0L);
    long s = t.xi.is_zero() ? 0 : std::max(0L, -t.xi.valuation());
    if (t.xi.abs_precision() < m)
      throw Error(Errc::InsufficientPrecision, "xi_p known only modulo p^" +
                                                   std::to_string(t.xi.abs_precision()));
    seen.back() = p;
    D *= pk(p, s);
    M *= pk(p, m);
    (void)Mz;
  }
  if (inf.eps < need) throw Error(Errc::PreconditionViolated, "eps_inf < (1/2) prod p/eps_p");

  // CRT for z = D xi_p mod p^(m_p + s_p).
  BigInt modulus = 1;
  for (const auto& t : targets) {
    const BigInt& p = t.xi.p();
    long n = 0;
    while (pow_p(p, -n) <= t.eps) --n;
    while (pow_p(p, -n - 1) > t.eps) ++n;
    long m = std::max(n + 1, 0L);
    long s = t.xi.is_zero() ? 0 : std::max(0L, -t.xi.valuation());
    BigInt mp = pk(p, m + s);
    BigInt target = (t.xi * D).truncate(m + s).residue(m + s);
    // z' = z + modulus * k with z' = target mod mp
    BigInt k = mod_pos((target - z) * inv_mod(mod_pos(modulus, mp), mp), mp);
    if (mp == 1) k = 0;
    z += modulus * k;
    modulus *= mp;
  }
  BigRat rhat(z, D);
  rhat.canonicalize();

  BigRat tq = (inf.xi - rhat) / BigRat(M);
  BigInt k0 = floor_rat(tq);
  BigRat r0 = rhat + BigRat(k0 * M), r1 = rhat + BigRat((k0 + 1) * M);
  BigRat d0 = abs(r0 - inf.xi), d1 = abs(r1 - inf.xi);
  BigRat r;
  if (d0 < d1) r = r0;
  else if (d1 < d0) r = r1;
  else r = abs(r0) <= abs(r1) ? r0 : r1;
  return r;
}

}  // namespace dioph
