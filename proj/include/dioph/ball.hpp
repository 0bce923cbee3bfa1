#pragma once

// Real balls on MPFR. Stored as an outward-rounded interval [lo, hi]; the
// center/radius view is derived exactly from the dyadic endpoints.

#include <mpfr.h>

#include <string>
#include <vector>

#include "dioph/core.hpp"

namespace dioph {

namespace detail {

class Fr {
 public:
  explicit Fr(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
  Fr(const Fr& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Fr(Fr&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
  Fr& operator=(const Fr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Fr& operator=(Fr&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  ~Fr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace detail

class RealBall {
 public:
  explicit RealBall(long bits = 128);

  static RealBall exact(const BigInt& v, long bits);
  static RealBall exact(const BigRat& v, long bits);
  static RealBall around(const BigRat& center, const BigRat& radius, long bits);
  static RealBall interval(const BigRat& lo, const BigRat& hi, long bits);
  // Decimal string; the ball covers the string's last digit by one unit.
  static RealBall parse(const std::string& decimal, long bits);

  long bits() const { return bits_; }

  BigRat lower() const;
  BigRat upper() const;
  BigRat center() const;
  BigRat radius() const;
  double mid() const;  // nearest double to the center; huge values saturate
  double log_mid() const;  // log|center|
  double log_radius() const;

  bool contains(const BigRat& q) const;
  bool contains(const RealBall& b) const;
  bool overlaps(const RealBall& b) const;
  bool contains_zero() const;
  bool positive() const;  // certainly > 0
  bool negative() const;
  bool finite() const;

  RealBall abs() const;
  RealBall sqr() const;
  RealBall sqrt() const;
  RealBall log() const;
  RealBall exp() const;
  RealBall pow(long e) const;
  RealBall inv() const;
  RealBall with_bits(long bits) const;

  friend RealBall operator+(const RealBall& x, const RealBall& y);
  friend RealBall operator-(const RealBall& x, const RealBall& y);
  friend RealBall operator*(const RealBall& x, const RealBall& y);
  friend RealBall operator/(const RealBall& x, const RealBall& y);
  friend RealBall operator-(const RealBall& x);

  friend RealBall operator+(const RealBall& x, const BigInt& y) { return x + exact(y, x.bits_); }
  friend RealBall operator-(const RealBall& x, const BigInt& y) { return x - exact(y, x.bits_); }
  friend RealBall operator*(const RealBall& x, const BigInt& y) { return x * exact(y, x.bits_); }
  friend RealBall operator*(const BigInt& y, const RealBall& x) { return x * exact(y, x.bits_); }
  friend RealBall operator/(const RealBall& x, const BigInt& y) { return x / exact(y, x.bits_); }
  friend RealBall operator+(const RealBall& x, const BigRat& y) { return x + exact(y, x.bits_); }
  friend RealBall operator-(const RealBall& x, const BigRat& y) { return x - exact(y, x.bits_); }
  friend RealBall operator*(const RealBall& x, const BigRat& y) { return x * exact(y, x.bits_); }

  // Convex hull / intersection of two balls.
  static RealBall hull(const RealBall& x, const RealBall& y);
  static RealBall intersect(const RealBall& x, const RealBall& y);  // throws if disjoint
  static RealBall max(const RealBall& x, const RealBall& y);
  static RealBall min(const RealBall& x, const RealBall& y);

  // Widen by a nonnegative rational on both sides.
  RealBall inflate(const BigRat& r) const;

  // Center rendered with `digits` significant digits; radius as a short
  // upward-rounded decimal that also covers the center rounding.
  std::string center_str(int digits = 0) const;
  std::string radius_str() const;
  std::string str(int digits = 20) const;

  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }

 private:
  long bits_;
  detail::Fr lo_, hi_;
};

RealBall golden_ratio(long bits);

// Certified comparison of a ball against a rational threshold: true when the
// ball is certainly <= t, false when certainly > t; InsufficientPrecision
// when the ball straddles t.
bool certify_le(const RealBall& x, const BigRat& t);
bool certify_lt(const RealBall& x, const RealBall& y);

// Distance to the nearest integer, in [0, 1/2].
RealBall frac_dist(const RealBall& beta);

// L_inf(x) = max_{1<=l<=n} |x_l - x_0 xi^l| for x = (x_0, ..., x_n).
RealBall l_form(const IntVec& x, const RealBall& xi);
RealBall l_form(const Point3& x, const RealBall& xi);

// Evaluate an integer polynomial at a ball.
RealBall eval(const IntPoly& p, const RealBall& t);

// x^e for x > 0.
RealBall pow(const RealBall& x, const RealBall& e);

}  // namespace dioph
