#pragma once

// Threshold functions of the exponent lambda, their roots and the named
// constants they define.

#include <string>
#include <vector>

#include "dioph/ball.hpp"
#include "dioph/core.hpp"
#include "dioph/report.hpp"

namespace dioph {

// a + b*gamma in Q(gamma), gamma^2 = gamma + 1.
struct Golden {
  BigRat a, b;

  static Golden gamma() { return {0, 1}; }
  Golden conj() const { return {a + b, -b}; }  // gamma -> 1 - gamma
  BigRat norm() const { return a * a + a * b - b * b; }
  Golden inv() const;  // DomainError for 0
  RealBall ball(long bits) const;
};
Golden operator+(const Golden& x, const Golden& y);
Golden operator-(const Golden& x, const Golden& y);
Golden operator*(const Golden& x, const Golden& y);
bool operator==(const Golden& x, const Golden& y);

enum class Flavor { Real, Padic };

enum class Fn {
  Theta, Delta, Phi, Psi,  // increasing
  F, G,  // decreasing
  AuxA, AuxB, AuxC,  // real flavor only: exponents a, b, c of the bracket estimate
  WindowF, WindowG,  // p-adic flavor only: f(theta(lambda)), g(theta(lambda)) of the window proof
};

const char* fn_name(Fn f);

struct ThresholdFunctions {
  Flavor flavor = Flavor::Real;
};

// Open domain of `which` in lambda.
std::pair<BigRat, BigRat> fn_domain(Flavor flavor, Fn which);

// DomainError if the ball is not inside the open domain.
RealBall eval(const ThresholdFunctions& fns, Fn which, const RealBall& lambda);
RealBall eval(const ThresholdFunctions& fns, Fn which, const BigRat& lambda, long bits = 256);

enum class Equation { FPhi, FPsi, EaWindow, PadicWindow };
const char* equation_name(Equation e);

// Root ball of radius <= tol by bisection with certified signs.
// NoSignChange if the bracketing interval does not change sign.
RealBall solve_threshold(const ThresholdFunctions& fns, Equation eq, const BigRat& tol);

struct ThresholdRow {
  std::string name;
  Flavor flavor;
  Equation eq;
  BigRat lo, hi;  // bracketing interval
  RealBall value;
  std::string quoted;  // published decimal
  double delta = 0;  // |value - quoted|
  std::string note;
};

// Every named root of the flavor, each against its published value.
std::vector<ThresholdRow> threshold_table(Flavor flavor, const BigRat& tol);

// Monotonicity on a grid, ordering chains, endpoint zeros.
Report threshold_checks(Flavor flavor, int grid = 400);

}  // namespace dioph
