#include <random>

#include "dioph/ball.hpp"
#include "dioph/core.hpp"
#include "dioph/error.hpp"
#include "doctest.h"

using namespace dioph;

namespace {
Point3 P(long a, long b, long c) { return {a, b, c}; }
}

TEST_CASE("det3 oracle values") {
  CHECK(det3(P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)) == 1);
  CHECK(det3(P(3, 1, 4), P(3, 1, 4), P(1, 5, 9)) == 0);
  CHECK(det3(P(5, 3, 2), P(21, 13, 8), P(208, 129, 80)) == 2);
}

TEST_CASE("wedge") {
  CHECK(wedge(P(1, 0, 0), P(0, 1, 0)) == P(0, 0, 1));
  CHECK(wedge(P(7, -2, 3), P(7, -2, 3)).is_zero());
  CHECK(wedge(P(5, 3, 2), P(21, 13, 8)) == P(-2, 2, 2));
}

TEST_CASE("bracket") {
  Point3 I = P(1, 0, 1);
  // -I J y J I = -J y J = (y2, -y1, y0)
  CHECK(bracket(I, I, P(1, 2, 3)) == P(3, -2, 1));
  try {
    bracket(P(1, 0, 0), P(0, 1, 0), P(0, 0, 1));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonSymmetricResult);
  }
  CHECK(bracket(P(1, 0, 0), P(0, 1, 0), P(1, 1, 0)).is_zero() == false);
  Point3 x = P(5, 3, 2), y = P(21, 13, 8);
  Point3 w = bracket(x, x, y);
  CHECK(bracket(x, x, w) == x.det() * x.det() * y);
}

TEST_CASE("height_subspace") {
  CHECK(height_subspace(P(1, 0, 0), P(0, 1, 0)) == 1);
  CHECK(height_subspace(P(2, 0, 0), P(0, 2, 0)) == 1);
  CHECK(height_subspace(P(5, 3, 2), P(21, 13, 8)) == 1);
  CHECK_THROWS_AS(height_subspace(P(1, 2, 3), P(2, 4, 6)), Error);
}

TEST_CASE("sup_norm at places") {
  CHECK(sup_norm(P(0, 0, 0), Place::prime(5)) == 0);
  CHECK(sup_norm(P(4, 6, 8), Place::prime(2)) == BigRat(1, 2));
  CHECK(sup_norm(P(4, 12, 8), Place::prime(2)) == BigRat(1, 4));
  CHECK(sup_norm(P(5, 3, 2), Place::infinity()) == 5);
  CHECK_THROWS_AS(Place::prime(9), Error);
}

TEST_CASE("l_form real") {
  RealBall xi = RealBall::parse("0.6201", 128);
  IntVec x{1, 1, 0};
  RealBall L = l_form(x, xi);
  CHECK(L.upper() <= BigRat(1, 2) + L.radius() * 2);
  RealBall q = RealBall::exact(BigRat(2, 3), 128);
  CHECK(l_form(IntVec{9, 6, 4}, q).contains(BigRat(0)));
  CHECK(l_form(IntVec{4, 2, 1}, RealBall::exact(BigRat(1, 2), 64)).upper() == 0);
}

TEST_CASE("frac_dist") {
  CHECK(frac_dist(RealBall::exact(BigInt(7), 128)).upper() == 0);
  CHECK(frac_dist(RealBall::exact(BigRat(1, 3), 128)).contains(BigRat(1, 3)));
  CHECK(frac_dist(RealBall::exact(BigRat(2, 3), 128)).contains(BigRat(1, 3)));
  RealBall g = frac_dist(golden_ratio(200));
  // nearest integer to 1.618... is 2
  CHECK(std::abs(g.mid() - 0.3819660112501051) < 1e-15);
  CHECK_THROWS_AS(frac_dist(RealBall::interval(BigRat(1, 2) - BigRat(1, 100), BigRat(1, 2) + BigRat(1, 100), 64)),
                  Error);
}

TEST_CASE("ball arithmetic encloses exact rational results") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> d(-100000, 100000);
  for (int i = 0; i < 500; ++i) {
    BigRat a(d(rng), std::abs(d(rng)) + 1), b(d(rng), std::abs(d(rng)) + 1);
    a.canonicalize();
    b.canonicalize();
    RealBall x = RealBall::exact(a, 40), y = RealBall::exact(b, 40);
    CHECK((x + y).contains(BigRat(a + b)));
    CHECK((x - y).contains(BigRat(a - b)));
    CHECK((x * y).contains(BigRat(a * b)));
    if (b != 0) CHECK((x / y).contains(BigRat(a / b)));
  }
}

TEST_CASE("J conjugation identity and wedge adjunction") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-1000, 1000);
  Mat2 J = Mat2::J();
  for (int i = 0; i < 200; ++i) {
    Mat2 w{d(rng), d(rng), d(rng), d(rng)};
    Mat2 lhs = J * w * J * w.transposed();
    CHECK(lhs == BigInt(-w.det()) * Mat2::identity());
    Point3 x = P(d(rng), d(rng), d(rng)), y = P(d(rng), d(rng), d(rng)), z = P(d(rng), d(rng), d(rng));
    CHECK(wedge(x, y) == BigInt(-1) * wedge(y, x));
    CHECK(det3(x, y, z) == dot(wedge(x, y), z));
  }
}

TEST_CASE("product formula") {
  for (long m : {1L, -12L, 360L, 1001L, 97L * 97L * 2L}) {
    BigRat prod = abs_at(BigInt(m), Place::infinity());
    for (long p = 2; p <= std::abs(m); ++p)
      if (is_prime(p) && m % p == 0) prod *= abs_at(BigInt(m), Place::prime(p));
    CHECK(prod == 1);
  }
}

TEST_CASE("poly parsing and evaluation") {
  IntPoly f = parse_poly("1, 0, -2");
  CHECK(f.degree() == 2);
  CHECK(f.eval(BigInt(3)) == 7);
  CHECK(f.derivative() == IntPoly::from_high_first({2, 0}));
  CHECK(f.height() == 2);
}

TEST_CASE("integer linear algebra") {
  std::vector<IntVec> m{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  CHECK(det(m) == 18);
  auto adj = adjugate(m);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      BigInt s = 0;
      for (int k = 0; k < 3; ++k) s += adj[i][k] * m[k][j];
      CHECK(s == (i == j ? BigInt(18) : BigInt(0)));
    }
  CHECK(rank({{1, 2, 3}, {2, 4, 6}}) == 1);
}
