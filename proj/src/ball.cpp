#include "dioph/ball.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "dioph/error.hpp"

namespace dioph {

using detail::Fr;

namespace {

BigRat get_q(mpfr_srcptr x) {
  if (!mpfr_number_p(x)) throw Error(Errc::InsufficientPrecision, "ball endpoint is not finite");
  BigRat q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

std::string fmt(const char* spec, int digits, mpfr_srcptr x) {
  char* s = nullptr;
  mpfr_asprintf(&s, spec, digits, x);
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

}  // namespace

RealBall::RealBall(long bits) : bits_(bits), lo_(bits), hi_(bits) {}

RealBall RealBall::exact(const BigInt& v, long bits) {
  RealBall r(bits);
  mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
  return r;
}

RealBall RealBall::exact(const BigRat& v, long bits) {
  RealBall r(bits);
  mpfr_set_q(r.lo_.get(), v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), v.get_mpq_t(), MPFR_RNDU);
  return r;
}

RealBall RealBall::around(const BigRat& center, const BigRat& radius, long bits) {
  return interval(center - radius, center + radius, bits);
}

RealBall RealBall::interval(const BigRat& lo, const BigRat& hi, long bits) {
  if (lo > hi) throw Error(Errc::InvalidArgument, "interval with lo > hi");
  RealBall r(bits);
  mpfr_set_q(r.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

RealBall RealBall::parse(const std::string& text, long bits) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw Error(Errc::InvalidArgument, "empty decimal");
  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    if (s[i] == '.') {
      if (seen_point) throw Error(Errc::InvalidArgument, "bad decimal '" + text + "'");
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits.push_back(s[i]);
      if (seen_point) ++frac_digits;
    } else {
      throw Error(Errc::InvalidArgument, "bad decimal '" + text + "'");
    }
  }
  long ex = 0;
  if (i < s.size()) ex = std::strtol(s.c_str() + i + 1, nullptr, 10);
  if (digits.empty()) throw Error(Errc::InvalidArgument, "bad decimal '" + text + "'");
  BigInt m(digits, 10);
  if (neg) m = -m;
  long scale = ex - frac_digits;
  BigRat unit = pow_p(BigInt(10), scale);
  BigRat v = BigRat(m) * unit;
  return around(v, unit, bits);
}

BigRat RealBall::lower() const { return get_q(lo_.get()); }
BigRat RealBall::upper() const { return get_q(hi_.get()); }
BigRat RealBall::center() const {
  BigRat c = (lower() + upper()) / 2;
  return c;
}
BigRat RealBall::radius() const {
  BigRat r = (upper() - lower()) / 2;
  return r;
}

double RealBall::mid() const {
  Fr t(bits_ + 2);
  mpfr_add(t.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(t.get(), t.get(), 1, MPFR_RNDN);
  return mpfr_get_d(t.get(), MPFR_RNDN);
}

double RealBall::log_mid() const {
  Fr t(bits_ + 2);
  mpfr_add(t.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(t.get(), t.get(), 1, MPFR_RNDN);
  mpfr_abs(t.get(), t.get(), MPFR_RNDN);
  if (mpfr_zero_p(t.get())) return -INFINITY;
  Fr l(64);
  mpfr_log(l.get(), t.get(), MPFR_RNDN);
  return mpfr_get_d(l.get(), MPFR_RNDN);
}

double RealBall::log_radius() const {
  Fr t(bits_ + 2);
  mpfr_sub(t.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  mpfr_div_2ui(t.get(), t.get(), 1, MPFR_RNDU);
  if (mpfr_zero_p(t.get())) return -INFINITY;
  Fr l(64);
  mpfr_log(l.get(), t.get(), MPFR_RNDU);
  return mpfr_get_d(l.get(), MPFR_RNDU);
}

bool RealBall::contains(const BigRat& q) const {
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}
bool RealBall::contains(const RealBall& b) const {
  return mpfr_lessequal_p(lo_.get(), b.lo_.get()) && mpfr_lessequal_p(b.hi_.get(), hi_.get());
}
bool RealBall::overlaps(const RealBall& b) const {
  return mpfr_lessequal_p(lo_.get(), b.hi_.get()) && mpfr_lessequal_p(b.lo_.get(), hi_.get());
}
bool RealBall::contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }
bool RealBall::positive() const { return mpfr_sgn(lo_.get()) > 0; }
bool RealBall::negative() const { return mpfr_sgn(hi_.get()) < 0; }
bool RealBall::finite() const { return mpfr_number_p(lo_.get()) && mpfr_number_p(hi_.get()); }

RealBall RealBall::abs() const {
  if (mpfr_sgn(lo_.get()) >= 0) return *this;
  if (mpfr_sgn(hi_.get()) <= 0) return -*this;
  RealBall r(bits_);
  mpfr_set_zero(r.lo_.get(), 1);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  mpfr_max(r.hi_.get(), r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

RealBall RealBall::sqr() const {
  RealBall a = abs();
  RealBall r(bits_);
  mpfr_sqr(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
  mpfr_sqr(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
  return r;
}

RealBall RealBall::sqrt() const {
  if (mpfr_sgn(hi_.get()) < 0) throw Error(Errc::DomainError, "sqrt of a negative ball");
  RealBall r(bits_);
  if (mpfr_sgn(lo_.get()) <= 0) mpfr_set_zero(r.lo_.get(), 1);
  else mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

RealBall RealBall::log() const {
  if (mpfr_sgn(lo_.get()) <= 0) throw Error(Errc::DomainError, "log of a ball touching zero");
  RealBall r(bits_);
  mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

RealBall RealBall::exp() const {
  RealBall r(bits_);
  mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

RealBall RealBall::pow(long e) const {
  if (e < 0) return pow(-e).inv();
  RealBall result = exact(BigInt(1), bits_);
  RealBall base = *this;
  bool odd_seen = false;
  // Even powers go through sqr so that balls around zero stay tight.
  while (e > 0) {
    if (e & 1) {
      result = odd_seen ? result * base : base;
      odd_seen = true;
    }
    e >>= 1;
    if (e) base = base.sqr();
  }
  return result;
}

RealBall RealBall::inv() const {
  if (contains_zero()) throw Error(Errc::InsufficientPrecision, "inverse of a ball containing zero");
  RealBall r(bits_);
  mpfr_ui_div(r.lo_.get(), 1, hi_.get(), MPFR_RNDD);
  mpfr_ui_div(r.hi_.get(), 1, lo_.get(), MPFR_RNDU);
  return r;
}

RealBall RealBall::with_bits(long bits) const {
  RealBall r(bits);
  mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

RealBall operator+(const RealBall& x, const RealBall& y) {
  RealBall r(std::max(x.bits_, y.bits_));
  mpfr_add(r.lo_.get(), x.lo_.get(), y.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), x.hi_.get(), y.hi_.get(), MPFR_RNDU);
  return r;
}

RealBall operator-(const RealBall& x, const RealBall& y) {
  RealBall r(std::max(x.bits_, y.bits_));
  mpfr_sub(r.lo_.get(), x.lo_.get(), y.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), x.hi_.get(), y.lo_.get(), MPFR_RNDU);
  return r;
}

RealBall operator-(const RealBall& x) {
  RealBall r(x.bits_);
  mpfr_neg(r.lo_.get(), x.hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), x.lo_.get(), MPFR_RNDU);
  return r;
}

RealBall operator*(const RealBall& x, const RealBall& y) {
  const long bits = std::max(x.bits_, y.bits_);
  RealBall r(bits);
  Fr t(bits);
  mpfr_srcptr xs[2] = {x.lo_.get(), x.hi_.get()};
  mpfr_srcptr ys[2] = {y.lo_.get(), y.hi_.get()};
  bool first = true;
  for (auto a : xs) {
    for (auto b : ys) {
      mpfr_mul(t.get(), a, b, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), a, b, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

RealBall operator/(const RealBall& x, const RealBall& y) {
  if (y.contains_zero()) throw Error(Errc::InsufficientPrecision, "division by a ball containing zero");
  const long bits = std::max(x.bits_, y.bits_);
  RealBall r(bits);
  Fr t(bits);
  mpfr_srcptr xs[2] = {x.lo_.get(), x.hi_.get()};
  mpfr_srcptr ys[2] = {y.lo_.get(), y.hi_.get()};
  bool first = true;
  for (auto a : xs) {
    for (auto b : ys) {
      mpfr_div(t.get(), a, b, MPFR_RNDD);
      if (first || mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), a, b, MPFR_RNDU);
      if (first || mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

RealBall RealBall::hull(const RealBall& x, const RealBall& y) {
  RealBall r(std::max(x.bits_, y.bits_));
  mpfr_min(r.lo_.get(), x.lo_.get(), y.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), x.hi_.get(), y.hi_.get(), MPFR_RNDU);
  return r;
}

RealBall RealBall::intersect(const RealBall& x, const RealBall& y) {
  if (!x.overlaps(y)) throw Error(Errc::NotConverged, "balls do not overlap");
  RealBall r(std::max(x.bits_, y.bits_));
  mpfr_max(r.lo_.get(), x.lo_.get(), y.lo_.get(), MPFR_RNDD);
  mpfr_min(r.hi_.get(), x.hi_.get(), y.hi_.get(), MPFR_RNDU);
  return r;
}

RealBall RealBall::max(const RealBall& x, const RealBall& y) {
  RealBall r(std::max(x.bits_, y.bits_));
  mpfr_max(r.lo_.get(), x.lo_.get(), y.lo_.get(), MPFR_RNDD);
  mpfr_max(r.hi_.get(), x.hi_.get(), y.hi_.get(), MPFR_RNDU);
  return r;
}

RealBall RealBall::min(const RealBall& x, const RealBall& y) {
  RealBall r(std::max(x.bits_, y.bits_));
  mpfr_min(r.lo_.get(), x.lo_.get(), y.lo_.get(), MPFR_RNDD);
  mpfr_min(r.hi_.get(), x.hi_.get(), y.hi_.get(), MPFR_RNDU);
  return r;
}

RealBall RealBall::inflate(const BigRat& rad) const {
  RealBall r = *this;
  mpfr_sub_q(r.lo_.get(), lo_.get(), rad.get_mpq_t(), MPFR_RNDD);
  mpfr_add_q(r.hi_.get(), hi_.get(), rad.get_mpq_t(), MPFR_RNDU);
  return r;
}

std::string RealBall::center_str(int digits) const {
  if (digits <= 0) digits = static_cast<int>(static_cast<double>(bits_) * 0.30103) + 2;
  Fr c(bits_ + 2);
  mpfr_add(c.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(c.get(), c.get(), 1, MPFR_RNDN);
  return fmt("%.*RNe", digits - 1, c.get());
}

std::string RealBall::radius_str() const {
  // The printed radius must cover the printed center, not just the exact one.
  BigRat printed = parse(center_str(), 64).center();
  BigRat r = radius() + dioph::abs(center() - printed);
  Fr t(64);
  mpfr_set_q(t.get(), r.get_mpq_t(), MPFR_RNDU);
  return fmt("%.*RUe", 3, t.get());
}

std::string RealBall::str(int digits) const {
  return center_str(digits) + " +/- " + radius_str();
}

RealBall golden_ratio(long bits) {
  RealBall five = RealBall::exact(BigInt(5), bits);
  return (five.sqrt() + BigInt(1)) / BigInt(2);
}

bool certify_le(const RealBall& x, const BigRat& t) {
  if (mpfr_cmp_q(x.hi(), t.get_mpq_t()) <= 0) return true;
  if (mpfr_cmp_q(x.lo(), t.get_mpq_t()) > 0) return false;
  throw Error(Errc::InsufficientPrecision, "ball straddles the comparison threshold");
}

bool certify_lt(const RealBall& x, const RealBall& y) {
  if (mpfr_less_p(x.hi(), y.lo())) return true;
  if (mpfr_greaterequal_p(x.lo(), y.hi())) return false;
  throw Error(Errc::InsufficientPrecision, "balls overlap in comparison");
}

RealBall frac_dist(const RealBall& beta) {
  if (beta.radius() >= BigRat(1, 4))
    throw Error(Errc::InsufficientPrecision, "ball radius >= 1/4 in frac_dist");
  const BigRat half(1, 2);
  BigInt n_lo = floor_rat(beta.lower() + half);
  BigInt n_hi = floor_rat(beta.upper() + half);
  if (n_lo != n_hi)
    throw Error(Errc::InsufficientPrecision, "nearest integer ambiguous in frac_dist");
  return (beta - n_lo).abs();
}

RealBall l_form(const IntVec& x, const RealBall& xi) {
  if (x.size() < 2) throw Error(Errc::InvalidArgument, "l_form needs n >= 1");
  RealBall power = xi;
  RealBall best(xi.bits());
  for (size_t l = 1; l < x.size(); ++l) {
    RealBall d = (RealBall::exact(x[l], xi.bits()) - x[0] * power).abs();
    best = l == 1 ? d : RealBall::max(best, d);
    power = power * xi;
  }
  return best;
}

RealBall l_form(const Point3& x, const RealBall& xi) { return l_form(x.vec(), xi); }

RealBall eval(const IntPoly& p, const RealBall& t) {
  RealBall acc(t.bits());
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

RealBall pow(const RealBall& x, const RealBall& e) { return (e * x.log()).exp(); }

}  // namespace dioph
