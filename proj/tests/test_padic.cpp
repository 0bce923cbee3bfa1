#include <random>

#include "dioph/error.hpp"
#include "dioph/padic.hpp"
#include "doctest.h"

using namespace dioph;

TEST_CASE("padic basics") {
  auto x = PadicNumber::from_int(12, 2, 20);
  CHECK(x.valuation() == 2);
  CHECK(x.unit() == 3);
  CHECK(x.abs() == BigRat(1, 4));
  auto third = PadicNumber::from_rat(BigRat(1, 3), 5, 10);
  CHECK((third * BigInt(3)).agrees(PadicNumber::from_int(1, 5, 10), 10));
  auto y = PadicNumber::from_int(7, 7, 5) - PadicNumber::from_int(7, 7, 5);
  CHECK(y.is_zero());
  CHECK(y.abs_precision() == 5);
}

TEST_CASE("padic cancellation loses precision") {
  auto a = PadicNumber::from_int(1 + 4 * 3, 2, 6);  // 13 mod 64
  auto b = PadicNumber::from_int(1, 2, 6);
  auto d = a - b;
  CHECK(d.valuation() == 2);
  CHECK(d.precision() == 4);
}

TEST_CASE("padic_dist") {
  IntVec u{1, 2, 4}, v{3, 6, 12}, w{1, 0, 8};
  CHECK(padic_dist(u, u, 2) == 0);
  CHECK(padic_dist(u, v, 3) == 0);
  CHECK_THROWS_AS(padic_dist(u, IntVec{0, 0, 0}, 2), Error);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(-500, 500);
  for (int i = 0; i < 500; ++i) {
    IntVec a{d(rng), d(rng), d(rng)}, b{d(rng), d(rng), d(rng)}, c{d(rng), d(rng), d(rng)};
    if (content(a) == 0 || content(b) == 0 || content(c) == 0) continue;
    for (long p : {2L, 3L, 5L}) {
      BigRat ac = padic_dist(a, c, p), ab = padic_dist(a, b, p), bc = padic_dist(b, c, p);
      CHECK(ac <= std::max(ab, bc));
    }
  }
  (void)w;
}

TEST_CASE("hensel sqrt 2 in Z_7") {
  IntPoly f = IntPoly::from_high_first({1, 0, -2});
  auto xi = PadicNumber::from_int(3, 7, 1);
  auto h = hensel_lift(f, xi, 50);
  BigInt r = h.root.residue(50);
  CHECK(valuation(BigInt(r * r - 2), BigInt(7)) >= 50);
  CHECK(mpz_class(r % 343) == 3 + 1 * 7 + 2 * 49);
  CHECK(h.residual_valuation >= 50);
  CHECK(h.dist <= h.bound);
}

TEST_CASE("hensel linear and failure") {
  IntPoly lin = IntPoly::from_high_first({1, -5});
  auto h = hensel_lift(lin, PadicNumber::from_int(5, 3, 10), 10);
  CHECK(h.root.residue(10) == 5);
  CHECK(h.dist == 0);
  IntPoly g = IntPoly::from_high_first({1, 0, -3});
  try {
    hensel_lift(g, PadicNumber::from_int(1, 5, 10), 10);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CriterionFails);
  }
}

TEST_CASE("denominator_clear") {
  IntPoly f = IntPoly::from_high_first({1, -1, 0});
  auto xi = PadicNumber::from_rat(BigRat(1, 3), 3, 10);
  auto c = denominator_clear(f, xi);
  CHECK(c.d == 3);
  CHECK(c.f == IntPoly::from_high_first({1, -3, 0}));
  CHECK(c.xi.integral());
  auto id = denominator_clear(f, PadicNumber::from_int(4, 3, 10));
  CHECK(id.d == 1);
  CHECK(id.f == f);
}

TEST_CASE("strong_approx") {
  CHECK(strong_approx({BigRat(7, 3), BigRat(1, 2)}, {}) == 2);
  auto xi2 = PadicNumber::from_int(1, 2, 30);
  BigRat r = strong_approx({0, 4}, {{xi2, BigRat(1, 4)}});
  CHECK(abs(r) <= 4);
  CHECK(abs_at(BigRat(r - 1), Place::prime(2)) <= BigRat(1, 4));
  CHECK(r.get_den() == 1);
  try {
    strong_approx({0, BigRat(1, 10)}, {{xi2, BigRat(1, 4)}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PreconditionViolated);
  }
}

TEST_CASE("precision soundness") {
  auto a = PadicNumber::from_rat(BigRat(2, 7), 3, 8), b = PadicNumber::from_rat(BigRat(5, 11), 3, 8);
  auto A = PadicNumber::from_rat(BigRat(2, 7), 3, 30), B = PadicNumber::from_rat(BigRat(5, 11), 3, 30);
  auto lo = (a * b + a) / b, hi = (A * B + A) / B;
  CHECK(lo.agrees(hi, lo.abs_precision()));
}
