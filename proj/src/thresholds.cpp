#include "dioph/thresholds.hpp"

#include <cmath>

#include "dioph/error.hpp"

namespace dioph {

Golden operator+(const Golden& x, const Golden& y) { return {x.a + y.a, x.b + y.b}; }
Golden operator-(const Golden& x, const Golden& y) { return {x.a - y.a, x.b - y.b}; }
Golden operator*(const Golden& x, const Golden& y) {
  // (a + b g)(c + d g) = ac + bd + (ad + bc + bd) g
  BigRat bd = x.b * y.b;
  return {x.a * y.a + bd, x.a * y.b + x.b * y.a + bd};
}
bool operator==(const Golden& x, const Golden& y) { return x.a == y.a && x.b == y.b; }

Golden Golden::inv() const {
  BigRat n = norm();
  if (n == 0) throw Error(Errc::DomainError, "inverse of 0 in Q(gamma)");
  Golden c = conj();
  return {c.a / n, c.b / n};
}

RealBall Golden::ball(long bits) const {
  return RealBall::exact(a, bits) + golden_ratio(bits) * b;
}

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Theta: return "theta";
    case Fn::Delta: return "delta";
    case Fn::Phi: return "phi";
    case Fn::Psi: return "psi";
    case Fn::F: return "f";
    case Fn::G: return "g";
    case Fn::AuxA: return "a";
    case Fn::AuxB: return "b";
    case Fn::AuxC: return "c";
    case Fn::WindowF: return "window_f";
    case Fn::WindowG: return "window_g";
  }
  return "?";
}

const char* equation_name(Equation e) {
  switch (e) {
    case Equation::FPhi: return "f=phi";
    case Equation::FPsi: return "f=psi";
    case Equation::EaWindow: return "ea-window";
    case Equation::PadicWindow: return "padic-window";
  }
  return "?";
}

std::pair<BigRat, BigRat> fn_domain(Flavor flavor, Fn which) {
  const bool dec = which == Fn::F || which == Fn::G || which == Fn::AuxA || which == Fn::AuxB ||
                   which == Fn::AuxC || which == Fn::WindowF || which == Fn::WindowG;
  if (flavor == Flavor::Real) {
    if (which == Fn::WindowF || which == Fn::WindowG)
      throw Error(Errc::DomainError, std::string(fn_name(which)) + " is p-adic only");
    return dec ? std::pair<BigRat, BigRat>{make_rat(1, 2), 1} : std::pair<BigRat, BigRat>{0, 1};
  }
  if (which == Fn::AuxA || which == Fn::AuxB || which == Fn::AuxC)
    throw Error(Errc::DomainError, std::string(fn_name(which)) + " is real only");
  return dec ? std::pair<BigRat, BigRat>{make_rat(3, 2), 2} : std::pair<BigRat, BigRat>{1, 2};
}

RealBall eval(const ThresholdFunctions& fns, Fn which, const RealBall& lam) {
  auto [lo, hi] = fn_domain(fns.flavor, which);
  if (!(lam.lower() > lo && lam.upper() < hi))
    throw Error(Errc::DomainError, std::string(fn_name(which)) + " outside its domain at " + lam.str(12));
  const long bits = lam.bits();
  const RealBall one = RealBall::exact(BigInt(1), bits), two = RealBall::exact(BigInt(2), bits);
  const bool real = fns.flavor == Flavor::Real;
  const RealBall t = real ? lam / (one - lam) : (lam - one) / (two - lam);
  const RealBall t2 = t.sqr();
  const RealBall delta = real ? lam * t : t2 / (t + one);
  switch (which) {
    case Fn::Theta: return t;
    case Fn::Delta: return delta;
    case Fn::Phi: return (t2 - one) / (t2 + one);
    case Fn::Psi: return real ? two * lam - one : two * lam - RealBall::exact(BigInt(3), bits);
    case Fn::F:
      return real ? one / (lam * (t - one)) - t - one : one / ((t - one) * (lam - one)) - t - one;
    case Fn::G: return one - delta * t * (t - one);
    case Fn::AuxA: return two - t2 * t / (t + one);
    case Fn::AuxB: return one / (t - one) - two * t2 / (t + one);
    case Fn::AuxC: return one - t2 / (t + one) - t2 * t / (t + one);
    case Fn::WindowF: {
      RealBall u = t - one;
      return two + one / u + one / t2 + one / (t2 * t) - (t + u.sqr() + u.sqr() * u) * (one + t2 / (t + one));
    }
    case Fn::WindowG: {
      RealBall u = t - one;
      return two + one / u + one / t + one / t2 - (two + u.sqr()) * (one + t2 / (t + one));
    }
  }
  throw Error(Errc::InvalidArgument, "unknown function");
}

RealBall eval(const ThresholdFunctions& fns, Fn which, const BigRat& lambda, long bits) {
  return eval(fns, which, RealBall::exact(lambda, bits));
}

namespace {

struct Bracket {
  BigRat lo, hi;
};

Bracket bracket_of(Flavor fl, Equation eq) {
  const bool real = fl == Flavor::Real;
  switch (eq) {
    case Equation::FPhi:
    case Equation::FPsi:
      // f blows up at the left end and vanishes at 1/gamma (gamma).
      return real ? Bracket{make_rat(501, 1000), make_rat(618, 1000)}
                  : Bracket{make_rat(1501, 1000), make_rat(1618, 1000)};
    case Equation::EaWindow:
      if (!real) throw Error(Errc::DomainError, "ea-window is a real-flavor equation");
      return {make_rat(6127, 10000), make_rat(618, 1000)};
    case Equation::PadicWindow:
      if (real) throw Error(Errc::DomainError, "padic-window is a p-adic equation");
      return {make_rat(8, 5), make_rat(1618, 1000)};
  }
  throw Error(Errc::InvalidArgument, "unknown equation");
}

// Difference that is positive left of the root and negative right of it.
RealBall diff(const ThresholdFunctions& fns, Equation eq, const RealBall& lam) {
  switch (eq) {
    case Equation::FPhi: return eval(fns, Fn::F, lam) - eval(fns, Fn::Phi, lam);
    case Equation::FPsi: return eval(fns, Fn::F, lam) - eval(fns, Fn::Psi, lam);
    case Equation::EaWindow: {
      RealBall t = eval(fns, Fn::Theta, lam);
      RealBall one = RealBall::exact(BigInt(1), lam.bits());
      RealBall w1 = eval(fns, Fn::Psi, lam);
      RealBall w2 = one - eval(fns, Fn::AuxA, lam) / (t - one);
      RealBall w3 = -one - t.sqr() * eval(fns, Fn::AuxB, lam) / lam;
      return eval(fns, Fn::F, lam) - RealBall::min(w1, RealBall::min(w2, w3));
    }
    case Equation::PadicWindow:
      return RealBall::max(eval(fns, Fn::WindowF, lam), eval(fns, Fn::WindowG, lam));
  }
  throw Error(Errc::InvalidArgument, "unknown equation");
}

// +1 / -1, raising precision until the sign is certain.
int sign_at(const ThresholdFunctions& fns, Equation eq, const BigRat& lam) {
  for (long bits = 128; bits <= 8192; bits *= 2) {
    RealBall d = diff(fns, eq, RealBall::exact(lam, bits));
    if (d.positive()) return 1;
    if (d.negative()) return -1;
  }
  throw Error(Errc::InsufficientPrecision, std::string("sign of ") + equation_name(eq) + " undecided");
}

}  // namespace

RealBall solve_threshold(const ThresholdFunctions& fns, Equation eq, const BigRat& tol) {
  if (tol <= 0) throw Error(Errc::InvalidArgument, "tol must be positive");
  Bracket b = bracket_of(fns.flavor, eq);
  if (sign_at(fns, eq, b.lo) != 1 || sign_at(fns, eq, b.hi) != -1)
    throw Error(Errc::NoSignChange, std::string(equation_name(eq)) + " on the bracketing interval");
  BigRat lo = b.lo, hi = b.hi;
  while (hi - lo > 2 * tol) {
    BigRat m = (lo + hi) / 2;
    if (sign_at(fns, eq, m) > 0)
      lo = m;
    else
      hi = m;
  }
  return RealBall::interval(lo, hi, 128);
}

std::vector<ThresholdRow> threshold_table(Flavor flavor, const BigRat& tol) {
  ThresholdFunctions fns{flavor};
  std::vector<ThresholdRow> rows;
  auto add = [&](const std::string& name, Equation eq, const std::string& quoted, const std::string& note) {
    ThresholdRow r;
    r.name = name;
    r.flavor = flavor;
    r.eq = eq;
    Bracket b = bracket_of(flavor, eq);
    r.lo = b.lo;
    r.hi = b.hi;
    r.value = solve_threshold(fns, eq, tol);
    r.quoted = quoted;
    r.delta = std::fabs(r.value.mid() - std::stod(quoted));
    r.note = note;
    rows.push_back(r);
  };
  if (flavor == Flavor::Real) {
    add("real_f_phi_root", Equation::FPhi, "0.60842266", "");
    add("real_f_psi_root", Equation::FPsi, "0.61263521", "");
    add("ea_window_root", Equation::EaWindow, "0.61455261", "quoted value; off from the computed root by about 2e-5");
    rows.push_back(rows.back());
    rows.back().quoted = "0.611455261";
    rows.back().delta = std::fabs(rows.back().value.mid() - 0.611455261);
    rows.back().note = "second quoted value; off from the computed root by about 3e-3";
  } else {
    add("padic_f_phi_root", Equation::FPhi, "1.60842266", "");
    add("padic_f_psi_root", Equation::FPsi, "1.61263521", "");
    add("padic_window_root", Equation::PadicWindow, "1.615358873", "");
  }
  return rows;
}

Report threshold_checks(Flavor flavor, int grid) {
  Report rep;
  ThresholdFunctions fns{flavor};
  const bool real = flavor == Flavor::Real;
  const long bits = 200;
  const RealBall g = golden_ratio(bits);
  const RealBall end = real ? RealBall::exact(BigInt(1), bits) / g : g;
  const BigRat half = real ? make_rat(1, 2) : make_rat(3, 2);

  // Endpoint zeros.
  for (Fn w : {Fn::F, Fn::G}) {
    RealBall v = eval(fns, w, end);
    rep.add(std::string(fn_name(w)) + "_vanishes_at_end", 0, v.contains_zero() && v.radius() < pow_p(2, -150),
            v.str(6));
  }
  for (Fn w : {Fn::Psi, Fn::Phi}) {
    RealBall v = eval(fns, w, half);
    rep.add(std::string(fn_name(w)) + "_vanishes_at_start", 0, v.upper() == 0 || v.contains_zero(), v.str(6));
  }

  // Monotonicity on a grid of interior points.
  auto grid_pts = [&](const BigRat& a, const BigRat& b) {
    std::vector<BigRat> pts;
    for (int i = 1; i < grid; ++i) pts.push_back(a + (b - a) * make_rat(i, grid));
    return pts;
  };
  const BigRat top = real ? make_rat(618, 1000) : make_rat(1618, 1000);
  struct M {
    Fn fn;
    int dir;
  };
  for (M m : {M{Fn::Theta, 1}, M{Fn::Delta, 1}, M{Fn::Phi, 1}, M{Fn::Psi, 1}, M{Fn::F, -1}, M{Fn::G, -1}}) {
    auto [dlo, dhi] = fn_domain(flavor, m.fn);
    BigRat a = dlo + make_rat(1, 1000), b = (m.dir > 0) ? dhi - make_rat(1, 1000) : top;
    auto pts = grid_pts(a, b);
    bool ok = true;
    long bad = -1;
    RealBall prev = eval(fns, m.fn, pts[0], bits);
    for (size_t i = 1; i < pts.size(); ++i) {
      RealBall cur = eval(fns, m.fn, pts[i], bits);
      RealBall d = (cur - prev) * BigInt(m.dir);
      if (!d.positive()) {
        ok = false;
        bad = static_cast<long>(i);
        break;
      }
      prev = cur;
    }
    rep.add(std::string(fn_name(m.fn)) + (m.dir > 0 ? "_increasing" : "_decreasing"), bad, ok);
  }

  // Ordering chains: 0 < g <= f < phi above the f=phi root, and f < psi < phi
  // above the f=psi root, up to the end point.
  for (Equation eq : {Equation::FPhi, Equation::FPsi}) {
    RealBall root = solve_threshold(fns, eq, pow_p(2, -40));
    BigRat a = root.upper() + pow_p(2, -30);
    bool ok = true;
    long bad = -1;
    auto pts = grid_pts(a, top);
    pts.push_back(top);
    for (size_t i = 0; i < pts.size() && ok; ++i) {
      RealBall gv = eval(fns, Fn::G, pts[i], bits), fv = eval(fns, Fn::F, pts[i], bits);
      RealBall ph = eval(fns, Fn::Phi, pts[i], bits), ps = eval(fns, Fn::Psi, pts[i], bits);
      bool step = gv.positive() && !(gv - fv).positive() && (ph - fv).positive();
      if (eq == Equation::FPsi) step = step && (ps - fv).positive() && (ph - ps).positive();
      if (!step) {
        ok = false;
        bad = static_cast<long>(i);
      }
    }
    rep.add(std::string("ordering_above_") + equation_name(eq), bad, ok);
  }

  if (real) {
    // c < b < 0 < a on the ea-window interval.
    RealBall root = solve_threshold(fns, Equation::EaWindow, pow_p(2, -40));
    bool ok = true;
    for (const BigRat& x : grid_pts(root.upper(), top)) {
      RealBall a = eval(fns, Fn::AuxA, x, bits), b = eval(fns, Fn::AuxB, x, bits), c = eval(fns, Fn::AuxC, x, bits);
      ok = ok && (b - c).positive() && b.negative() && a.positive();
    }
    rep.add("aux_c_lt_b_lt_0_lt_a", -1, ok);
  }
  return rep;
}

}  // namespace dioph
