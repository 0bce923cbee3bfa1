#pragma once

// Truncated p-adic numbers: p^v * unit known modulo p^(v+N).

#include <map>
#include <optional>
#include <vector>

#include "dioph/ball.hpp"
#include "dioph/core.hpp"

namespace dioph {

class PadicNumber {
 public:
  // Integer or rational value known modulo p^abs_prec.
  static PadicNumber from_int(const BigInt& v, const BigInt& p, long abs_prec);
  static PadicNumber from_rat(const BigRat& v, const BigInt& p, long abs_prec);
  // Value known to be 0 mod p^abs_prec.
  static PadicNumber zero(const BigInt& p, long abs_prec);
  // p^valuation * unit with relative precision `precision`.
  static PadicNumber make(const BigInt& p, long valuation, const BigInt& unit, long precision);

  const BigInt& p() const { return p_; }
  bool is_zero() const { return zero_; }
  // For the zero marker this is the absolute precision.
  long valuation() const { return v_; }
  const BigInt& unit() const { return unit_; }
  long precision() const { return zero_ ? 0 : n_; }
  long abs_precision() const { return zero_ ? v_ : v_ + n_; }
  bool integral() const { return v_ >= 0; }

  // |x|_p for nonzero x; for the zero marker an upper bound p^(-abs_prec).
  BigRat abs() const;
  // The rational p^v * unit.
  BigRat value() const;
  // Integer representative in [0, p^k) for integral x, k <= abs_precision().
  BigInt residue(long k) const;
  BigInt residue() const { return residue(abs_precision()); }

  PadicNumber truncate(long abs_prec) const;
  // Agreement modulo p^k, with k bounded by both precisions.
  bool agrees(const PadicNumber& o, long k) const;

  friend PadicNumber operator+(const PadicNumber& x, const PadicNumber& y);
  friend PadicNumber operator-(const PadicNumber& x, const PadicNumber& y);
  friend PadicNumber operator*(const PadicNumber& x, const PadicNumber& y);
  friend PadicNumber operator/(const PadicNumber& x, const PadicNumber& y);
  friend PadicNumber operator-(const PadicNumber& x);
  PadicNumber pow(unsigned long e) const;

  PadicNumber operator*(const BigInt& k) const;
  PadicNumber operator+(const BigInt& k) const;

  std::string str() const;

 private:
  BigInt p_{2};
  bool zero_ = true;
  long v_ = 0;
  BigInt unit_{0};
  long n_ = 0;
};

using PadicPoint = std::vector<PadicNumber>;

PadicPoint moment_vector(const PadicNumber& xi, int n);  // (1, xi, ..., xi^n)

PadicNumber eval(const IntPoly& f, const PadicNumber& t);

// Projective distance ||u ^ v||_p / (||u||_p ||v||_p) of rational vectors.
BigRat padic_dist(const std::vector<BigRat>& u, const std::vector<BigRat>& v, const BigInt& p);
BigRat padic_dist(const IntVec& u, const IntVec& v, const BigInt& p);

// For truncated inputs: the distance, or an upper bound when all minors
// vanish to working precision.
struct PadicDist {
  BigRat value;
  bool upper_bound;
};
PadicDist padic_dist(const PadicPoint& u, const PadicPoint& v);

// ||x||_p of a truncated point; throws InsufficientPrecision if all
// coordinates vanish to working precision.
BigRat sup_norm(const PadicPoint& x);

// L_p(x) = max_l |x_l - x_0 xi^l|_p; `upper_bound` set when the maximum is
// only bounded above by the working precision.
struct PadicLForm {
  BigRat value;
  bool upper_bound;
};
PadicLForm l_form(const IntVec& x, const PadicNumber& xi);

struct HenselResult {
  PadicNumber root;  // alpha modulo p^target
  long residual_valuation;  // v_p(F(alpha_rep))
  BigRat fxi_abs;  // |F(xi)|_p
  BigRat dfxi_abs;  // |F'(xi)|_p
  BigRat dist;  // |xi - alpha|_p, exact for the representatives
  BigRat bound;  // |F(xi)|_p / |F'(xi)|_p
};

HenselResult hensel_lift(const IntPoly& f, const PadicNumber& xi, long target_precision);

struct Cleared {
  IntPoly f;
  PadicNumber xi;
  BigInt d;
};
Cleared denominator_clear(const IntPoly& f, const PadicNumber& xi);

struct ArchTarget {
  BigRat xi;
  BigRat eps;
};
struct PadicTarget {
  PadicNumber xi;
  BigRat eps;
};

// Explicit strong approximation: |r - xi_inf| <= eps_inf, |r - xi_p|_p <=
// eps_p for each target, |r|_q <= 1 for q outside the target primes.
BigRat strong_approx(const ArchTarget& inf, const std::vector<PadicTarget>& targets);

}  // namespace dioph
