#include <doctest.h>

#include <cmath>

#include "dioph/approx.hpp"
#include "dioph/duality.hpp"
#include "dioph/error.hpp"

using namespace dioph;

namespace {

const EaSeq& e2() {
  static EaSeq s = [] {
    auto [x1, x2] = find_ea_seed(2, 2);
    EaSeq t = make_ea(2, x1, x2);
    extend_ea(t, 27);
    return t;
  }();
  return s;
}

const RealBall& e2_xi() {
  static RealBall xi = ea_xi(e2(), ea_limit(e2()), 512);
  return xi;
}

IntVec vec(const Point3& p) { return {p[0], p[1], p[2]}; }

ApproxSystem real_system(int n, const RealBall& xi, const BigRat& lam, const BigRat& c) {
  ApproxSystem s;
  s.n = n;
  s.xi_inf = xi;
  s.lambda_inf = lam;
  s.c = c;
  return s;
}

// (1 + 1e-6) times the smallest c admitting x_k at X_k.
BigRat fitted_c(long k, const BigRat& lam) {
  RealBall L = l_form(vec(e2().at(k)), e2_xi());
  RealBall c = L * pow(RealBall::exact(BigRat(e2().X(k)), 256), RealBall::exact(lam, 256));
  return c.upper() * make_rat(1000001, 1000000);
}

const BigRat kInvGamma = make_rat(987, 1597);

PadicNumber padic_xi2() {
  FibSeq f = padic_example(2, 2);
  extend_fib(f, 30);
  FibLimit fl = fib_limit(f, Place::prime(2), 256);
  return fl.xi_p->truncate(512);
}

}  // namespace

TEST_CASE("system validation") {
  ApproxSystem s = real_system(2, RealBall::exact(make_rat(1, 3), 128), 0, 1);
  s.lambda_inf = make_rat(-3, 2);
  CHECK_THROWS_AS(s.validate(), Error);
  s.lambda_inf = 0;
  s.S.push_back({4, PadicNumber::from_int(1, 4, 10), 0});
  CHECK_THROWS_AS(s.validate(), Error);
  s.S = {{2, PadicNumber::from_int(1, 2, 10), make_rat(-1, 2)}};
  CHECK_THROWS_AS(s.validate(), Error);
  s.S = {{2, PadicNumber::from_int(1, 3, 10), 0}};
  CHECK_THROWS_AS(s.validate(), Error);
  s.S.clear();
  s.c = 0;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("zero exponents: the unit vector is always a solution") {
  ApproxSystem s = real_system(2, RealBall::exact(make_rat(7, 5), 128), 0, make_rat(2, 1));
  SolutionSet sol = enumerate_solutions(s, 5, 5);
  IntVec e0{1, 0, 0};
  bool found = false;
  for (const auto& v : sol.primitives) found = found || v == e0;
  CHECK(found);
  // every point in the box with L <= 2 is present: brute count
  long count = 0;
  for (long a = -5; a <= 5; ++a)
    for (long b = -5; b <= 5; ++b)
      for (long c = -5; c <= 5; ++c) {
        if (!a && !b && !c) continue;
        double L = std::max(std::fabs(b - a * 1.4), std::fabs(c - a * 1.96));
        if (L <= 2 + 1e-9) ++count;
      }
  CHECK(static_cast<long>(sol.solutions.size()) == count);
}

TEST_CASE("n = 1 solutions are continued fraction convergents") {
  RealBall xi = RealBall::exact(BigInt(2), 256).sqrt() - BigInt(1);
  ContinuedFraction cf = cf_certified(xi, 30);
  ApproxSystem s = real_system(1, xi, 1, make_rat(1, 2));
  size_t seen = 0;
  for (long X : {10L, 30L, 100L, 1000L}) {
    SolutionSet sol = enumerate_solutions(s, X, X);
    seen += sol.primitives.size();
    for (const auto& v : sol.primitives) {
      BigRat q = make_rat(v[1], v[0]);
      bool conv = std::find(cf.convergents.begin(), cf.convergents.end(), q) != cf.convergents.end();
      CHECK_MESSAGE(conv, v[1], "/", v[0]);
    }
  }
  CHECK(seen >= 2);
}

TEST_CASE("E_2: minimal solutions at X_5 and X_7 are the sequence points") {
  for (long k : {5L, 7L}) {
    ApproxSystem s = real_system(2, e2_xi(), kInvGamma, fitted_c(k, kInvGamma));
    BigRat X(e2().X(k));
    SolutionSet sol = enumerate_solutions(s, X, X);
    std::vector<IntVec> want{vec(e2().at(k))};
    CHECK(sol.minimal() == want);
  }
}

TEST_CASE("E_2 at X_6: x_6 is never minimal because (13,8,5) beats it") {
  BigRat X(e2().X(6));
  ApproxSystem s = real_system(2, e2_xi(), kInvGamma, fitted_c(6, kInvGamma));
  SolutionSet sol = enumerate_solutions(s, X, X);
  IntVec better{13, 8, 5};
  REQUIRE(!sol.minimal().empty());
  CHECK(sol.minimal().front() != vec(e2().at(6)));
  CHECK(std::find(sol.primitives.begin(), sol.primitives.end(), better) != sol.primitives.end());
  CHECK((l_form(vec(e2().at(6)), e2_xi()) - l_form(better, e2_xi())).positive());
}

TEST_CASE("S-unit multiples of solutions stay solutions") {
  ApproxSystem s = real_system(2, RealBall::exact(make_rat(5, 7), 128), make_rat(1, 5), 2);
  s.S.push_back({3, PadicNumber::from_int(5, 3, 40), make_rat(1, 5)});
  SolutionSet sol = enumerate_solutions(s, 60, 60);
  CHECK(!sol.solutions.empty());
  CHECK(sol.zs_factoring_ok);
  for (const auto& x : sol.solutions) CHECK(check_point(s, 60, x.x).ok());
}

TEST_CASE("J_c: bisection agrees with the closed forms") {
  ApproxSystem s = real_system(2, e2_xi(), kInvGamma, 1);
  for (long k = 4; k <= 8; ++k) {
    IntVec v = vec(e2().at(k));
    IcInterval a = jc_interval(v, s), b = jc_closed_form(v, s);
    REQUIRE(a.empty == b.empty);
    if (a.empty) continue;
    CHECK(a.lo == doctest::Approx(b.lo).epsilon(1e-9));
    CHECK(a.hi == doctest::Approx(b.hi).epsilon(1e-9));
  }
  ApproxSystem p = real_system(2, RealBall::exact(make_rat(1, 3), 256), -1, 10);
  p.S.push_back({2, PadicNumber::from_int(BigInt("1234567891"), 2, 64), make_rat(3, 2)});
  for (const IntVec& v : {IntVec{1, 1, 1}, IntVec{8, 3, 1}, IntVec{16, 5, 3}, IntVec{64, 21, 7}}) {
    IcInterval a = jc_interval(v, p), b = jc_closed_form(v, p);
    REQUIRE(a.empty == b.empty);
    if (a.empty) continue;
    CHECK(a.lo == doctest::Approx(b.lo).epsilon(1e-9));
    CHECK(a.hi == doctest::Approx(b.hi).epsilon(1e-9));
  }
  ApproxSystem none = real_system(2, e2_xi(), 0, 1);
  none.S.push_back({2, PadicNumber::from_int(3, 2, 64), make_rat(1, 2)});
  CHECK_THROWS_AS(jc_closed_form(IntVec{1, 1, 1}, none), Error);
}

TEST_CASE("J_c intervals of consecutive minimal points nest") {
  ApproxSystem s = real_system(2, e2_xi(), kInvGamma, 1);
  std::vector<IntVec> mins;
  for (int i = 0; i <= 40; ++i) {
    long X = std::lround(std::pow(10.0, 0.3 + 2.0 * i / 40));
    SolutionSet sol = enumerate_solutions(s, X, X);
    if (sol.minimal().empty()) continue;
    IntVec v = sol.minimal().front();
    if (mins.empty() || mins.back() != v) mins.push_back(v);
  }
  REQUIRE(mins.size() >= 3);
  for (size_t i = 0; i + 1 < mins.size(); ++i) {
    IcInterval a = jc_interval(mins[i], s), b = jc_interval(mins[i + 1], s);
    REQUIRE(!a.empty);
    REQUIRE(!b.empty);
    CHECK(b.lo <= a.hi * (1 + 1e-9));
    CHECK(a.hi <= b.hi);
  }
}

TEST_CASE("Minkowski construction, both branches") {
  ApproxSystem s = real_system(2, RealBall::exact(make_rat(14142, 10000), 256), make_rat(1, 5), 2);
  s.S.push_back({2, PadicNumber::from_int(BigInt("123456789012345"), 2, 64), make_rat(3, 10)});
  for (long X : {10L, 100L, 1000L, 10000L}) {
    MinkowskiReport r = minkowski_construct(s, X);
    CHECK(r.branch == 1);
    CHECK(r.check.ok());
    CHECK(check_point(s, X, r.point).ok());
    CHECK(det(r.basis) == r.det);
    CHECK((r.volume - r.rhs).positive());
  }
  s.c = make_rat(1, 100);
  CHECK_THROWS_WITH_AS(minkowski_construct(s, 1000), doctest::Contains("VolumeInequalityFails"), Error);
  s.c = 2;
  s.S[0].lambda = 1;
  CHECK_THROWS_AS(minkowski_construct(s, 1000), Error);

  ApproxSystem t = real_system(2, RealBall::exact(make_rat(14142, 10000), 256), -1, 1);
  t.S.push_back({2, PadicNumber::from_int(BigInt("123456789012345"), 2, 64), make_rat(1, 2)});
  for (long X : {10L, 100L, 1000L}) {
    MinkowskiReport r = minkowski_construct(t, X);
    CHECK(r.branch == 2);
    CHECK(check_point(t, X, r.point).ok());
  }
}

TEST_CASE("dual points are independent and within the relaxed bounds") {
  ApproxSystem s = real_system(2, e2_xi(), kInvGamma, make_rat(1, 100));
  DualPoints d = dual_points(s, 100);
  REQUIRE(d.points.size() == 3);
  CHECK(d.det != 0);
  CHECK(d.det == det(d.points));
  for (const auto& y : d.points) {
    double B = d.K1 * std::pow(100.0, 987.0 / 1597);
    for (const auto& c : y) CHECK(std::fabs(c.get_d()) <= B);
    RealBall val = RealBall::exact(y[0], 256) + e2_xi() * y[1] + e2_xi().sqr() * y[2];
    CHECK(certify_le(val.abs(), BigRat(d.K2) / 100));
  }
  ApproxSystem big = real_system(2, e2_xi(), kInvGamma, 10);
  CHECK_THROWS_WITH_AS(dual_points(big, 100), doctest::Contains("HypothesisFails"), Error);
}

TEST_CASE("polynomial certificates and real roots, S empty") {
  ApproxSystem s = real_system(2, e2_xi(), kInvGamma, make_rat(1, 100));
  IntPoly R = parse_poly("1,0,0,0");
  for (long X : {100L, 1000L}) {
    PipelineRow row = approx_poly(s, R, X);
    CHECK(row.poly.ok());
    CHECK(row.F.degree() == 3);
    CHECK(row.F.leading() == 1);
    REQUIRE(row.roots.has_real);
    CHECK(row.roots.alpha_inf.radius() < pow_p(2, -200));
    // the root sits in the Newton bracket
    RealBall fx = eval(row.F, e2_xi()), dfx = eval(row.F.derivative(), e2_xi());
    CHECK(certify_le(row.roots.dist_inf, ((fx / dfx).abs() * BigInt(2)).upper()));
    CHECK(row.roots.predicted_inf == doctest::Approx(1 + 1597.0 / 987));
  }
}

TEST_CASE("build_polynomial rejects dependent points") {
  ApproxSystem s = real_system(2, e2_xi(), kInvGamma, make_rat(1, 100));
  Targets t;
  t.eta_inf = RealBall::exact(BigInt(0), 128);
  std::vector<IntVec> pts{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  CHECK_THROWS_WITH_AS(build_polynomial(pts, t, s, 10), doctest::Contains("LinearAlgebraSingular"), Error);
}

TEST_CASE("root extraction on known polynomials") {
  ApproxSystem s = real_system(1, RealBall::exact(make_rat(141, 100), 256), 0, 1);
  s.S.push_back({7, PadicNumber::from_int(3, 7, 60), 0});
  RootReport r = extract_roots(IntPoly({-2, 0, 1}), s);
  REQUIRE(r.has_real);
  CHECK(r.alpha_inf.overlaps(RealBall::exact(BigInt(2), 300).sqrt()));
  REQUIRE(r.padic.size() == 1);
  CHECK(r.padic[0].dist == make_rat(1, 7));
  CHECK(r.padic[0].dist == r.padic[0].bound);
  CHECK(r.padic[0].integral);
  PadicNumber a2 = r.padic[0].alpha * r.padic[0].alpha;
  CHECK((a2 - PadicNumber::from_int(2, 7, 60)).is_zero());

  ApproxSystem z = real_system(1, RealBall::exact(BigInt(0), 128), 0, 1);
  CHECK_THROWS_WITH_AS(extract_roots(IntPoly({1, 0, 1}), z), doctest::Contains("NoSignChange"), Error);
}

TEST_CASE("p-adic pipeline with the preset 2-adic point") {
  ApproxSystem s = real_system(2, e2_xi(), -1, make_rat(1, 100));
  s.S.push_back({2, padic_xi2(), make_rat(1597, 987) - make_rat(1, 20)});
  IntPoly R = parse_poly("1,0,0,0");
  for (long X : {10L, 30L}) {
    PipelineRow row = approx_poly(s, R, X);
    CHECK(row.poly.ok());
    CHECK(!row.roots.has_real);
    REQUIRE(row.roots.padic.size() == 1);
    const auto& pr = row.roots.padic[0];
    CHECK(pr.integral);
    CHECK(pr.dist == pr.bound);
    CHECK(pr.dist < 1);
    CHECK(eval(row.F, pr.alpha).is_zero());
  }
}
