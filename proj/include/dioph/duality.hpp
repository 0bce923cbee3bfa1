#pragma once

// Approximation systems in degree n: brute-force solution oracle, the
// intervals J_c(v), the Minkowski construction and the dual-point to
// polynomial to root pipeline.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dioph/ball.hpp"
#include "dioph/core.hpp"
#include "dioph/padic.hpp"

namespace dioph {

struct PadicPlace {
  BigInt p;
  PadicNumber xi;
  BigRat lambda;
};

struct ApproxSystem {
  int n = 2;
  RealBall xi_inf;
  BigRat lambda_inf;
  std::vector<PadicPlace> S;
  BigRat c = 1;

  // lambda_inf + sum of lambda_p
  BigRat lambda_sum() const;
  // Throws InvalidArgument for lambda_inf < -1, negative lambda_p,
  // duplicate or non-prime p, or c <= 0.
  void validate() const;
};

// c X^-lambda as a ball.
RealBall bound_at(const BigRat& c, const BigRat& X, const BigRat& lambda, long bits);

struct PointCheck {
  bool norm_ok = false;
  bool inf_ok = false;
  std::vector<bool> p_ok;
  bool ok() const;
};

// The three inequality families at X. Inconclusive if an archimedean
// comparison straddles the ball radius.
PointCheck check_point(const ApproxSystem& sys, const BigRat& X, const IntVec& x);

struct Solution {
  IntVec x;
  IntVec primitive;  // positive leading nonzero coordinate
  BigInt multiplier;  // x = multiplier * primitive
};

struct SolutionSet {
  BigRat X;
  BigInt box;  // |x_i| <= box was searched
  std::vector<Solution> solutions;
  std::vector<IntVec> primitives;  // distinct, sorted by norm then lexicographically
  long candidates = 0;  // points passed to the exact check
  bool zs_factoring_ok = true;  // m v is a solution whenever l v is
  std::vector<IntVec> minimal() const;  // primitives of least sup norm
};

// All nonzero integer points with |x_i| <= X satisfying the system.
SolutionSet enumerate_solutions(const ApproxSystem& sys, const BigRat& X, const BigRat& norm_cap);

IntVec primitive_of(const IntVec& x, BigInt* multiplier = nullptr);

struct IcInterval {
  IntVec v;
  bool empty = true;
  double lo = 0, hi = 0;
};

// {X >= 1 : criterion holds for v}, by bisection on log X.
IcInterval jc_interval(const IntVec& v, const ApproxSystem& sys);
// Closed forms: S empty with lambda_inf > 0, or one prime with
// lambda_inf = -1 and lambda_p > 1. PreconditionViolated otherwise.
IcInterval jc_closed_form(const IntVec& v, const ApproxSystem& sys);

struct MinkowskiReport {
  int branch = 1;  // 1: lambda_inf > -1, 2: lambda_inf = -1
  RealBall M;
  BigInt d0, b;
  std::vector<long> n_p;
  IntVec d;  // d_0, ..., d_n
  std::vector<IntVec> basis;  // u_0, ..., u_n
  BigInt det;
  RealBall volume, rhs;  // volume of the body and 2^(n+1) det
  IntVec point;
  PointCheck check;
};

// PreconditionViolated outside the Minkowski region, VolumeInequalityFails
// when c is too small, SearchExhausted if no lattice point is found.
MinkowskiReport minkowski_construct(const ApproxSystem& sys, const BigRat& X);

struct DualPoints {
  std::vector<IntVec> points;  // n + 1 independent points, by norm
  BigInt det;
  double K1 = 1, K2 = 1;  // final relaxation
  int doublings = 0;
  BigInt a, b;  // a t_p integral, a b Lambda* integral
  long candidates = 0;
};

struct DualConfig {
  double K1 = 1, K2 = 1;
  int max_doublings = 24;
  bool check_primal = true;
  long primal_cap = 200000;
};

// HypothesisFails if the primal system has a solution at X, NotFound if
// the relaxation budget runs out.
DualPoints dual_points(const ApproxSystem& sys, const BigRat& X, const DualConfig& cfg = {});

struct PolyCertificate {
  IntPoly P;
  BigRat eps;  // rationalization tolerance that produced integral coefficients
  BigRat N;
  int halvings = 0;
  double c1 = 0, c2 = 0;
  RealBall eps_inf, rho_inf;
  RealBall value_inf;  // |P(xi) + eta|
  RealBall deriv_inf;  // |P'(xi)|
  bool value_band_ok = false;  // in [(n+1) N c1 X^.., 3 (n+1) N c1 X^..]
  bool deriv_band_ok = false;
  struct PadicPart {
    BigInt p;
    long k_p = 0;
    BigRat value_abs, expected_value_abs;  // |P(xi_p) + eta_p|_p and |eps_p|_p
    BigRat deriv_abs, rho_abs;
    bool value_ok = false, deriv_ok = false;
  };
  std::vector<PadicPart> padic;
  bool ok() const;
};

struct Targets {
  RealBall eta_inf;
  std::map<long, PadicNumber> eta_p;  // keyed by p
  std::map<long, PadicNumber> rho_p;
};

// IntegralityFails after the halving budget is spent.
PolyCertificate build_polynomial(const std::vector<IntVec>& points, const Targets& targets,
                                 const ApproxSystem& sys, const BigRat& X, int max_halvings = 40);

// rho_p = p^e with p^-e <= 1/||t_p||_p minimal, times p if that collides with |R'(xi_p)|_p.
PadicNumber default_rho(const PadicPlace& place, int n, const IntPoly& R);

struct RootReport {
  bool has_real = false;
  RealBall alpha_inf;
  RealBall dist_inf;
  double predicted_inf = 0;  // (lambda_inf + 1) / lambda
  struct PadicRoot {
    BigInt p;
    PadicNumber alpha;
    BigRat dist, bound;
    bool integral = false;
    double predicted = 0;  // lambda_p / lambda
  };
  std::vector<PadicRoot> padic;
};

// Roots of F near xi at each place: the real one bracketed between xi and
// xi - 2 F(xi) / F'(xi), p-adic ones by Hensel lifting.
RootReport extract_roots(const IntPoly& F, const ApproxSystem& sys, long bits = 256);

struct PipelineRow {
  BigRat X;
  DualPoints dual;
  PolyCertificate poly;
  IntPoly F;
  BigInt H;
  RootReport roots;
};

// dual_points, build_polynomial with eta = R(xi), then extract_roots on F = P + R.
PipelineRow approx_poly(const ApproxSystem& sys, const IntPoly& R, const BigRat& X, const DualConfig& cfg = {});

}  // namespace dioph
