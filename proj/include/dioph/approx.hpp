#pragma once

// Fractional parts {x_{k,0} R(xi)} along an E_a sequence, their
// accumulation points, continued fractions and the convergent
// constructions for degree 3 and 4.

#include <cstdint>
#include <optional>
#include <vector>

#include "dioph/ball.hpp"
#include "dioph/core.hpp"
#include "dioph/fib.hpp"
#include "dioph/report.hpp"

namespace dioph {

struct FracRow {
  long k = 0;
  RealBall value;
  bool conclusive = true;  // radius < 1e-3 * value (or the value is exactly 0)
};

struct DiffRow {
  long k = 0;  // difference between members k + period and k
  RealBall diff;
  double scaled = 0;  // |diff| * X_k / H(R)
};

struct FracSeries {
  IntPoly R;
  int period = 3;  // 3 for deg R <= 3, 6 for deg 4
  long bits = 0;  // precision xi was taken at
  std::vector<FracRow> rows;
  std::vector<DiffRow> diffs;
  double C = 0;  // max scaled difference
};

// Period of the residue classes for R.
int frac_period(const IntPoly& R);

// xi is requested from the sequence at a precision that clears
// X_{k_hi}^-2 H(R)^-1 with margin, and escalated when a row comes out
// inconclusive.
FracSeries frac_series(const EaSeq& seq, const EaLimit& lim, const IntPoly& R, long k_lo, long k_hi);

struct AccumulationPoint {
  int l = 0;  // residue class of k
  RealBall limit;
  std::vector<long> members;
  double rate = 0;  // mean of log|d_{j+1}| / log|d_j| over class differences
  bool positive = false;
  bool converged = false;
};

// One point per residue class. Each member ball is inflated by the tail
// bound 10 * 2 C H(R) / X_k, and the limit is the intersection of the last two.
// NotConverged if the last two disagree or the joint radius is >= 1e-6 max(1, |value|).
std::vector<AccumulationPoint> accumulation_points(const EaSeq& seq, const FracSeries& series);

struct ContinuedFraction {
  std::vector<BigInt> quotients;
  std::vector<BigRat> convergents;
  bool terminated = false;  // exact rational, expansion finished
};

// Certified partial quotients of every number in the ball.
// InsufficientPrecision naming the first uncertifiable index if fewer than
// `count` quotients can be certified and the expansion has not terminated.
ContinuedFraction cf_expand(const RealBall& alpha, size_t count);
// As many quotients as the ball certifies (up to `count`).
ContinuedFraction cf_certified(const RealBall& alpha, size_t count);
// Full expansion of a rational.
ContinuedFraction cf_exact(const BigRat& alpha);

struct ConvergentRow {
  long k = 0;
  int kind = 1;  // 1: error ~ X^-gamma^2, 2: error ~ X^-(gamma^2+1)
  BigInt num, den;  // approximation |num| / den of the limit
  BigInt gcd;  // gcd(num, den)
  double log_X = 0;
  double log_err = 0;
  bool err_certified = false;  // error ball excludes 0
  bool is_convergent = false;
};

struct ConvergentReport {
  IntPoly R;
  int l = 0;
  RealBall limit;
  std::vector<ConvergentRow> rows;
  double slope1 = 0, slope2 = 0;  // log-log fits per kind
  int n_convergent1 = 0, n_convergent2 = 0;
  Report exact;  // identities among the constructed integers, gcd bounds
};

// Degree-3 R: for k = l + 1 mod 3 the numerator from A_k, for k = l + 2
// mod 3 the numerator from E_k.
ConvergentReport verify_deg3_convergents(const EaSeq& seq, const EaLimit& lim, const IntPoly& R, int l,
                                         long k_lo, long k_hi);
// Degree-4 R: k = l + 4 mod 6 with denominator x_{k-1,0} x_{k,0}, k = l + 2
// mod 6 with denominator x_{k,0}^2. PreconditionViolated for deg R != 4.
ConvergentReport verify_deg4_accumulation(const EaSeq& seq, const EaLimit& lim, const IntPoly& R, int l,
                                          long k_lo, long k_hi);

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

struct Alt0Decade {
  long lo = 0, hi = 0;  // heights in [lo, hi)
  std::vector<BigInt> best_p;  // P, highest degree first
  RealBall best;  // min |R(xi) + P(xi)| H(P)^gamma over the sample
  long samples = 0;
};

struct Alt0Report {
  IntPoly R;
  RealBall exhaustive_min;  // H(P) <= exhaustive_height
  std::vector<BigInt> exhaustive_argmin;
  long exhaustive_height = 0;
  std::vector<Alt0Decade> decades;
  double decade_slope = 0;  // log10(min) against decade index
  RealBall r_value;  // |R(xi)| H(R)^(1 + gamma^5)
  std::vector<std::pair<IntPoly, RealBall>> r_grid;
  RealBall r_grid_min;
};

struct Alt0Config {
  long exhaustive_height = 50;
  long max_height = 10000;  // decades 10..max_height
  long samples_per_decade = 1000;
  long r_grid_height = 2;
  std::uint64_t seed = 1;
};

Alt0Report alt0_scan(const EaSeq& seq, const EaLimit& lim, const IntPoly& R, const Alt0Config& cfg);

struct BandRow {
  long k = 0;
  RealBall value;
  double scaled = 0;
};

struct BandReport {
  std::vector<BandRow> rows;
  double min_scaled = 0;
  double fitted_exponent = 0;
  bool pass = false;
};

// {x_{k,0} R(xi)} X_k^(2/gamma^2) over k.
BandReport alt1_band(const EaSeq& seq, const EaLimit& lim, const IntPoly& R, long k_lo, long k_hi);

// Q_k = x_{k,0} T^2 - 2 x_{k,1} T + x_{k,2}: |Q_k(xi)| H(Q_k)^(gamma^3) and the
// height growth H(Q_{k+1}) / H(Q_k)^gamma. Advisory.
struct W2Report {
  std::vector<BandRow> rows;
  double decay_exponent = 0;  // fit of log|Q_k(xi)| against log H(Q_k)
  double max_height_ratio = 0;
  bool band_pass = false;
};
W2Report w2_candidate_check(const EaSeq& seq, const EaLimit& lim, long k_lo, long k_hi);

}  // namespace dioph
