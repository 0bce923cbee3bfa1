#include "dioph/error.hpp"
#include "dioph/fib.hpp"
#include "doctest.h"

using namespace dioph;

namespace {
EaSeq e2(int upto) {
  auto [x1, x2] = find_ea_seed(2, 2);
  EaSeq s = make_ea(2, x1, x2);
  extend_ea(s, upto);
  return s;
}
}  // namespace

TEST_CASE("E_2 seed search") {
  auto [x1, x2] = find_ea_seed(2, 2);
  CHECK(x1 == Point3{0, 1, 0});
  CHECK(x2 == Point3{1, 1, 2});
  CHECK_THROWS_AS(find_ea_seed(2, 0), Error);
}

TEST_CASE("E_2 terms") {
  EaSeq s = e2(10);
  CHECK(s.at(3) == Point3{1, 1, 0});
  CHECK(s.at(4) == Point3{2, 1, 0});
  CHECK(s.at(5) == Point3{5, 3, 2});
  CHECK(s.at(6) == Point3{21, 13, 8});
  CHECK(s.at(7) == Point3{208, 129, 80});
  CHECK(det3(s.at(5), s.at(6), s.at(7)) == 2);
  CHECK(s.eps(7) == -1);
}

TEST_CASE("E_2 identities") {
  EaSeq s = e2(24);
  Report r = verify_identities(s, 3, 20);
  CHECK(r.ok());
  CHECK(r.checks.size() > 18 * 20);
}

TEST_CASE("identity suite notices a corrupted term") {
  EaSeq s = e2(24);
  s.x[10].x1 += 1;
  Report r = verify_identities(s, 3, 20);
  CHECK_FALSE(r.ok());
  bool near = false;
  for (const auto& c : r.failures()) near |= (c.index >= 8 && c.index <= 10);
  CHECK(near);
}

TEST_CASE("extend_ea rejects a bad seed") {
  EaSeq s = make_ea(2, Point3{1, 0, 1}, Point3{1, 1, 2});
  CHECK_THROWS_AS(extend_ea(s, 12), Error);
}

TEST_CASE("real preset") {
  FibSeq f = real_example(2, 1, 2);
  CHECK(f.y[0] == Point3{5, -2, 0});
  CHECK(f.w[0] == Mat2{1, 1, 2, 4});
  CHECK(f.w[1] == Mat2{1, 2, 2, 6});
  CHECK(fib_det_triple(f) == 16);
  CHECK(real_example_det_triple(2, 1, 2) == 16);
  CHECK(f.w[0].det() == 2);
  CHECK(f.w[1].det() == 2);
  CHECK(f.N.det() == -2);
  extend_fib(f, 21);
  CHECK(verify_fib_symmetry(f).ok());
  CHECK(verify_det_multiplicative(f).ok());
  CHECK(verify_sandwich(f, 18).ok());
  CHECK(verify_growth(f, 15, 20, 0.02).ok());
  CHECK(verify_mod_a(f, 2).ok());
}

TEST_CASE("padic preset") {
  FibSeq f = padic_example(2, 2);
  CHECK(fib_det_triple(f) == padic_example_det_triple(2, 2));
  extend_fib(f, 20);
  CHECK(verify_padic_preset(f, 2, 20).ok());
  CHECK(verify_det_multiplicative(f).ok());
  FibLimit lim = fib_limit(f, Place::prime(2), 0);
  REQUIRE(lim.xi_p.has_value());
  CHECK(lim.xi_p->valuation() == 2);
  CHECK(lim.xi_p->abs_precision() > 1000);
  CHECK(lim.det_zero_within_radius);
}

TEST_CASE("delta series") {
  EaSeq s = e2(12);
  FibSeq f = padic_example(2, 2);
  extend_fib(f, 12);
  DeltaSeries d2 = delta_series(f, Place::prime(2));
  DeltaSeries di = delta_series(f, Place::infinity());
  for (size_t i = 0; i < d2.values.size(); ++i) CHECK(abs_at(f.w[i].det(), Place::prime(2)) == d2.values[i]);
  CHECK(di.exponent_ratios.back() > 1.5);
}

TEST_CASE("E_2 limit point") {
  EaSeq s = e2(24);
  EaLimit lim = ea_limit(s);
  for (long k = 5; k <= 18; ++k) CHECK(ea_ball(s, lim, k, 256).contains(ea_ratio(s, k + 2)));
  RealBall xi = ea_xi(s, lim, 200);
  CHECK(std::abs(xi.mid() - 0.6201) < 1e-3);
  CHECK(xi.radius() < pow_p(2, -200));
  CHECK_THROWS_AS(ea_xi(s, lim, 1000000), Error);
}

TEST_CASE("real Fibonacci limit") {
  FibSeq f = real_example(2, 1, 2);
  extend_fib(f, 16);
  FibLimit lim = fib_limit(f, Place::infinity(), 64);
  REQUIRE(lim.xi.has_value());
  CHECK(lim.det_zero_within_radius);
}
