#include "dioph/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>

#include "dioph/error.hpp"

namespace dioph {

Json to_json(const BigInt& v) { return v.get_str(); }

Json to_json(const BigRat& v) { return v.get_str(); }

Json to_json(const RealBall& b) {
  Json j;
  j["center"] = b.center_str();
  j["radius"] = b.radius_str();
  j["bits"] = b.bits();
  return j;
}

Json to_json(const PadicNumber& x) {
  Json j;
  j["p"] = x.p().get_str();
  j["valuation"] = x.valuation();
  j["unit"] = x.is_zero() ? std::string("0") : x.unit().get_str();
  j["precision"] = x.precision();
  return j;
}

Json to_json(const IntVec& v) {
  Json j = Json::array();
  for (const auto& e : v) j.push_back(e.get_str());
  return j;
}

Json to_json(const Point3& x) { return to_json(IntVec{x.x0, x.x1, x.x2}); }

Json to_json(const Mat2& m) {
  return Json::array({Json::array({m.a.get_str(), m.b.get_str()}), Json::array({m.c.get_str(), m.d.get_str()})});
}

Json to_json(const IntPoly& p) { return to_json(p.high_first()); }

Json to_json(const Report& r) {
  Json j;
  j["ok"] = r.ok();
  j["checks"] = r.checks.size();
  Json fails = Json::array();
  for (const auto& c : r.failures())
    fails.push_back({{"name", c.name}, {"index", c.index}, {"lhs", c.lhs}, {"rhs", c.rhs}});
  j["failures"] = fails;
  return j;
}

BigRat parse_rational(const std::string& text) {
  static const std::regex frac(R"(\s*([+-]?\d+)\s*/\s*(\d+)\s*)");
  static const std::regex integer(R"(\s*[+-]?\d+\s*)");
  static const std::regex decimal(R"(\s*([+-]?)(\d*)(?:\.(\d*))?([eE]([+-]?\d+))?\s*)");
  std::smatch m;
  if (std::regex_match(text, m, frac)) {
    BigInt d(m[2].str());
    if (d == 0) throw Error(Errc::InvalidArgument, "zero denominator in '" + text + "'");
    return make_rat(BigInt(m[1].str()), d);
  }
  if (std::regex_match(text, integer)) {
    std::string t = text;
    t.erase(std::remove_if(t.begin(), t.end(), ::isspace), t.end());
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return BigRat(BigInt(t));
  }
  if (std::regex_match(text, m, decimal) && (m[2].length() + m[3].length()) > 0) {
    BigInt num(m[2].str() + m[3].str());
    long e = -static_cast<long>(m[3].length());
    if (m[5].matched) e += std::stol(m[5].str());
    BigRat q(num);
    if (e >= 0)
      q *= pow(BigInt(10), static_cast<unsigned long>(e));
    else
      q /= pow(BigInt(10), static_cast<unsigned long>(-e));
    q.canonicalize();
    return m[1].str() == "-" ? BigRat(-q) : q;
  }
  throw Error(Errc::InvalidArgument, "not a rational: '" + text + "'");
}

BigInt big_from_json(const Json& j) {
  if (j.is_string()) return BigInt(j.get<std::string>());
  if (j.is_number_integer()) return BigInt(j.get<long>());
  throw Error(Errc::InvalidArgument, "expected an integer, got " + j.dump());
}

BigRat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return BigRat(j.get<long>());
  throw Error(Errc::InvalidArgument, "expected a rational string, got " + j.dump());
}

PadicNumber padic_from_json(const Json& j) {
  BigInt p = big_from_json(j.at("p"));
  long v = j.at("valuation").get<long>();
  long prec = j.at("precision").get<long>();
  BigInt u = big_from_json(j.at("unit"));
  if (u == 0 || prec == 0) return PadicNumber::zero(p, v);
  return PadicNumber::make(p, v, u, prec);
}

IntVec intvec_from_json(const Json& j) {
  IntVec v;
  for (const auto& e : j) v.push_back(big_from_json(e));
  return v;
}

Point3 point_from_json(const Json& j) {
  IntVec v = intvec_from_json(j);
  if (v.size() != 3) throw Error(Errc::InvalidArgument, "a point needs three coordinates");
  return Point3{v[0], v[1], v[2]};
}

Mat2 mat_from_json(const Json& j) {
  return Mat2{big_from_json(j.at(0).at(0)), big_from_json(j.at(0).at(1)), big_from_json(j.at(1).at(0)),
              big_from_json(j.at(1).at(1))};
}

Json seq_to_json(const EaSeq& s) {
  Json j;
  j["kind"] = "ea";
  j["params"] = {{"a", s.a.get_str()}};
  Json terms = Json::array();
  for (int i = 1; i <= s.last(); ++i) {
    const Point3& x = s.x[static_cast<size_t>(i)];
    terms.push_back({{"i", i}, {"w", to_json(x.matrix())}, {"y", to_json(x)}, {"det_w", x.det().get_str()},
                     {"eps", x.det().get_str()}});
  }
  j["terms"] = terms;
  return j;
}

Json seq_to_json(const FibSeq& s) {
  Json j;
  j["kind"] = "fib";
  j["params"] = {{"name", s.name}, {"N", to_json(s.N)}};
  Json terms = Json::array();
  for (int i = 0; i <= s.last(); ++i) {
    const Mat2& w = s.w[static_cast<size_t>(i)];
    terms.push_back({{"i", i}, {"w", to_json(w)}, {"y", to_json(s.y[static_cast<size_t>(i)])},
                     {"det_w", w.det().get_str()}, {"eps", nullptr}});
  }
  j["terms"] = terms;
  return j;
}

EaSeq ea_from_json(const Json& j) {
  if (j.at("kind") != "ea") throw Error(Errc::InvalidArgument, "not an E_a sequence file");
  EaSeq s;
  s.a = big_from_json(j.at("params").at("a"));
  s.x = {Point3{}};
  int expect = 1;
  for (const auto& t : j.at("terms")) {
    if (t.at("i").get<int>() != expect++) throw Error(Errc::InvalidArgument, "terms out of order");
    s.x.push_back(point_from_json(t.at("y")));
  }
  if (s.last() < 2) throw Error(Errc::InvalidArgument, "need at least two terms");
  return s;
}

FibSeq fib_from_json(const Json& j) {
  if (j.at("kind") != "fib") throw Error(Errc::InvalidArgument, "not a Fibonacci sequence file");
  FibSeq s;
  s.name = j.at("params").at("name").get<std::string>();
  s.N = mat_from_json(j.at("params").at("N"));
  int expect = 0;
  for (const auto& t : j.at("terms")) {
    if (t.at("i").get<int>() != expect++) throw Error(Errc::InvalidArgument, "terms out of order");
    s.w.push_back(mat_from_json(t.at("w")));
    s.y.push_back(point_from_json(t.at("y")));
  }
  if (s.w.size() < 3) throw Error(Errc::InvalidArgument, "need at least three terms");
  return s;
}

namespace {

std::vector<std::string> preset_args(const std::string& name, const std::string& head) {
  if (name.rfind(head + "(", 0) != 0 || name.back() != ')') return {};
  std::string inner = name.substr(head.size() + 1, name.size() - head.size() - 2);
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t comma = inner.find(',', start);
    out.push_back(inner.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

bool Presets::is_ea(const std::string& name) const { return !preset_args(name, "ea").empty(); }

EaSeq Presets::ea(const std::string& name, int upto) const {
  auto args = preset_args(name, "ea");
  if (args.size() != 1) throw Error(Errc::InvalidArgument, "unknown E_a preset '" + name + "'");
  BigInt a(args[0]);
  EaSeq s;
  if (data.contains(name)) {
    const Json& e = data.at(name);
    s = make_ea(a, point_from_json(e.at("seed").at(0)), point_from_json(e.at("seed").at(1)));
  } else {
    auto [x1, x2] = find_ea_seed(a, 3);
    s = make_ea(a, x1, x2);
  }
  extend_ea(s, upto);
  return s;
}

FibSeq Presets::fib(const std::string& name, int upto) const {
  FibSeq s;
  if (auto r = preset_args(name, "real_example"); r.size() == 3) {
    s = real_example(BigInt(r[0]), BigInt(r[1]), BigInt(r[2]));
  } else if (auto p = preset_args(name, "padic_example"); p.size() == 2) {
    s = padic_example(BigInt(p[0]), std::stoul(p[1]));
  } else {
    throw Error(Errc::InvalidArgument, "unknown Fibonacci preset '" + name + "'");
  }
  if (data.contains(name) && data.at(name).contains("N")) {
    if (mat_from_json(data.at(name).at("N")) != s.N)
      throw Error(Errc::InvalidArgument, "preset file disagrees with the construction of " + name);
  }
  extend_fib(s, upto);
  return s;
}

Presets load_presets(const std::string& path) {
  Presets p;
  if (path.empty()) return p;
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot read presets file " + path);
  p.data = Json::parse(in);
  return p;
}

std::string default_presets_path() {
  if (const char* env = std::getenv("DIOPH_PRESETS")) return env;
#ifdef DIOPH_SOURCE_DIR
  std::string p = std::string(DIOPH_SOURCE_DIR) + "/presets/presets.json";
  if (std::filesystem::exists(p)) return p;
#endif
  if (std::filesystem::exists("presets/presets.json")) return "presets/presets.json";
  return "";
}

namespace {

const int kPresetDepth = 22;

RealBall real_xi(const Json& spec, const Presets& presets, long bits) {
  if (!spec.is_string()) throw Error(Errc::InvalidArgument, "xi.inf must be a string");
  std::string s = spec.get<std::string>();
  if (s.rfind("preset:", 0) == 0) {
    std::string name = s.substr(7);
    if (presets.is_ea(name)) {
      EaSeq e = presets.ea(name, 27);
      return ea_xi(e, ea_limit(e), bits);
    }
    FibSeq f = presets.fib(name, kPresetDepth);
    FibLimit lim = fib_limit(f, Place::infinity(), bits);
    if (!lim.xi) throw Error(Errc::InsufficientPrecision, "no real limit for " + name);
    return *lim.xi;
  }
  if (s.find('/') != std::string::npos) return RealBall::exact(parse_rational(s), bits);
  return RealBall::parse(s, bits);
}

PadicNumber padic_xi(const Json& spec, const BigInt& p, const Presets& presets, long bits) {
  if (spec.is_object()) return padic_from_json(spec);
  if (!spec.is_string()) throw Error(Errc::InvalidArgument, "xi for a prime must be a preset or an object");
  std::string s = spec.get<std::string>();
  if (s.rfind("preset:", 0) == 0) {
    FibSeq f = presets.fib(s.substr(7), kPresetDepth);
    FibLimit lim = fib_limit(f, Place::prime(p), bits);
    if (!lim.xi_p) throw Error(Errc::InsufficientPrecision, "no p-adic limit for " + s);
    return lim.xi_p->truncate(std::min(lim.xi_p->abs_precision(), 2 * bits));
  }
  // an integer or rational target
  return PadicNumber::from_rat(parse_rational(s), p, 2 * bits);
}

}  // namespace

ApproxSystem system_from_json(const Json& j, const Presets& presets, long bits) {
  ApproxSystem s;
  s.n = j.value("n", 2);
  s.c = rat_from_json(j.at("c"));
  s.xi_inf = real_xi(j.at("xi").at("inf"), presets, bits);
  s.lambda_inf = rat_from_json(j.at("lambda").at("inf"));
  for (const auto& pj : j.value("S", Json::array())) {
    BigInt p = big_from_json(pj);
    std::string key = p.get_str();
    s.S.push_back({p, padic_xi(j.at("xi").at(key), p, presets, bits), rat_from_json(j.at("lambda").at(key))});
  }
  s.validate();
  return s;
}

Json system_to_json(const ApproxSystem& s) {
  Json j;
  j["n"] = s.n;
  Json S = Json::array();
  Json xi, lam;
  xi["inf"] = to_json(s.xi_inf);
  lam["inf"] = to_json(s.lambda_inf);
  for (const auto& pl : s.S) {
    S.push_back(pl.p.get_str());
    xi[pl.p.get_str()] = to_json(pl.xi);
    lam[pl.p.get_str()] = to_json(pl.lambda);
  }
  j["S"] = S;
  j["xi"] = xi;
  j["lambda"] = lam;
  j["c"] = to_json(s.c);
  return j;
}

}  // namespace dioph
