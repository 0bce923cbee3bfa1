#pragma once

// Admissible Fibonacci matrix sequences and the E_a recurrence
// x_{k+1} = x_k S_k x_{k-1}.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dioph/ball.hpp"
#include "dioph/core.hpp"
#include "dioph/padic.hpp"
#include "dioph/report.hpp"

namespace dioph {

struct FibSeq {
  std::string name;
  Mat2 N;
  std::vector<Mat2> w;
  std::vector<Point3> y;  // y_i = w_i N_i

  // N for even i, its transpose for odd i.
  Mat2 N_at(size_t i) const { return i % 2 == 0 ? N : N.transposed(); }
  int last() const { return static_cast<int>(w.size()) - 1; }
};

// Builds w_0, w_1 and y_0, y_1, y_2; AdmissibilityViolation if any of them
// is not symmetric.
FibSeq make_fib(const Mat2& w0, const Mat2& w1, const Mat2& N, std::string name);
void extend_fib(FibSeq& seq, int upto);

FibSeq real_example(const BigInt& a, const BigInt& b, const BigInt& c);
FibSeq padic_example(const BigInt& p, unsigned long m);

BigInt fib_det_triple(const FibSeq& seq);  // det3(y_0, y_1, y_2)
// Closed forms for the two presets.
BigInt real_example_det_triple(const BigInt& a, const BigInt& b, const BigInt& c);
BigInt padic_example_det_triple(const BigInt& p, unsigned long m);

// f_{-1} = 1, f_0 = 0, f_{i+1} = f_i + f_{i-1}; returns f_i for i >= -1.
BigInt fibonacci(long i);

// Exact structural checks on a generated Fibonacci sequence.
Report verify_fib_symmetry(const FibSeq& seq);
Report verify_det_multiplicative(const FibSeq& seq);
Report verify_sandwich(const FibSeq& seq, int imax);
Report verify_growth(const FibSeq& seq, int imin, int imax, double tol);
Report verify_mod_a(const FibSeq& seq, const BigInt& a);  // real preset
Report verify_padic_preset(const FibSeq& seq, const BigInt& p, int imax);

struct DeltaSeries {
  Place place = Place::infinity();
  std::vector<BigRat> values;  // delta_{nu,i}
  std::vector<double> exponent_ratios;  // log delta_{i+1} / log delta_i
};
DeltaSeries delta_series(const FibSeq& seq, const Place& place);

struct FibLimit {
  Place place = Place::infinity();
  int index = 0;  // term the estimate is built from
  std::optional<RealBall> xi;  // real place
  std::optional<RealBall> xi2;  // y_2/y_0 at the real place
  std::optional<PadicNumber> xi_p;  // p-adic place
  BigRat C;  // fitted tail constant, safety factor included
  bool det_zero_within_radius = false;
};
// FirstCoordinateZero if y_{i,0} vanishes at the place for late i.
FibLimit fib_limit(const FibSeq& seq, const Place& place, long bits);

// ---- E_a ----

struct EaSeq {
  BigInt a;
  std::vector<Point3> x;  // x[0] is unused; x[1], x[2] are the seed

  int last() const { return static_cast<int>(x.size()) - 1; }
  const Point3& at(long k) const;
  BigInt eps(long k) const { return at(k).det(); }
  BigInt X(long k) const { return at(k).sup_norm(); }
};

// S_k = [[a, (-1)^k], [-(-1)^k, 0]]: M for even k, its transpose for odd k.
Mat2 ea_S(const BigInt& a, long k);

std::pair<Point3, Point3> find_ea_seed(const BigInt& a, int bound);
EaSeq make_ea(const BigInt& a, const Point3& x1, const Point3& x2);
// SeedInvalid if symmetry or unimodularity breaks.
void extend_ea(EaSeq& seq, int upto);

struct Abc {
  BigInt a, b, c;
};
// Minors of (x_k, x_{k+1}).
Abc abc(const EaSeq& seq, long k);

// Every identity family for k in [k_lo, k_hi]; needs x up to k_hi + 4.
Report verify_identities(const EaSeq& seq, long k_lo, long k_hi);

struct EaLimit {
  BigRat C;  // |xi - x_{k,1}/x_{k,0}| <= C / X_k^2
  int fit_from = 3;
  int fit_to = 0;
};
EaLimit ea_limit(const EaSeq& seq);
BigRat ea_ratio(const EaSeq& seq, long k);
RealBall ea_ball(const EaSeq& seq, const EaLimit& lim, long k, long bits);
// Ball for xi with radius <= 2^-bits, from the first index that reaches it.
// InsufficientTail if the generated terms do not support it.
RealBall ea_xi(const EaSeq& seq, const EaLimit& lim, long bits);


}  // namespace dioph
