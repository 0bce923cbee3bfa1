// Command-line driver. Every subcommand writes one JSON document holding
// the run configuration, the artifact version and the result.
//
// Exit codes: 0 pass, 1 verification failure, 2 inconclusive or precision
// exhausted, 64 usage or input error, 70 internal error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "dioph/approx.hpp"
#include "dioph/duality.hpp"
#include "dioph/error.hpp"
#include "dioph/io.hpp"
#include "dioph/thresholds.hpp"
#include "dioph/version.hpp"

using namespace dioph;

namespace {

enum Status { Pass = 0, Fail = 1, Inconclusive = 2, Usage = 64, Internal = 70 };

const char* status_name(int s) {
  switch (s) {
    case Pass: return "pass";
    case Fail: return "fail";
    case Inconclusive: return "inconclusive";
    default: return "usage";
  }
}

struct Common {
  long bits = 256;
  std::string out, csv, presets;
  int threads = 1;
};

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InvalidArgument, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidArgument, path + ": " + e.what());
  }
}

IntPoly poly_arg(const std::string& s) {
  IntPoly p = parse_poly(s);
  if (p.is_zero()) throw Error(Errc::InvalidArgument, "polynomial is zero");
  return p;
}

std::pair<long, long> range_arg(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) throw Error(Errc::InvalidArgument, "range must look like A..B");
  try {
    long a = std::stol(s.substr(0, dots)), b = std::stol(s.substr(dots + 2));
    if (a > b) throw Error(Errc::InvalidArgument, "empty range " + s);
    return {a, b};
  } catch (const std::logic_error&) {
    throw Error(Errc::InvalidArgument, "bad range " + s);
  }
}

// Holds an opened sequence file of either kind.
struct SeqFile {
  std::string kind;
  EaSeq ea;
  FibSeq fib;
};

// Output documents wrap the payload under "result"; bare payloads are accepted too.
Json payload(Json j) {
  if (j.is_object() && j.contains("artifact") && j.contains("result")) return j["result"];
  return j;
}

SeqFile load_seq(const std::string& path) {
  Json j = payload(load_json(path));
  SeqFile f;
  f.kind = j.value("kind", "");
  if (f.kind == "ea")
    f.ea = ea_from_json(j);
  else if (f.kind == "fib")
    f.fib = fib_from_json(j);
  else
    throw Error(Errc::InvalidArgument, path + " is not a sequence file");
  return f;
}

const EaSeq& need_ea(const SeqFile& f) {
  if (f.kind != "ea") throw Error(Errc::InvalidArgument, "this command needs an E_a sequence file");
  return f.ea;
}

Json rows_json(const std::vector<Json>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(r);
  return a;
}

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

// CSV projection of result.rows: scalar columns only, ball columns as center.
void write_csv(const std::string& path, const Json& result) {
  if (!result.contains("rows") || !result["rows"].is_array() || result["rows"].empty())
    throw Error(Errc::InvalidArgument, "this result has no rows to project to CSV");
  std::vector<std::string> cols;
  for (auto it = result["rows"][0].begin(); it != result["rows"][0].end(); ++it)
    if (!it.value().is_array()) cols.push_back(it.key());
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  for (size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << "\n";
  for (const auto& r : result["rows"]) {
    for (size_t i = 0; i < cols.size(); ++i) {
      Json v = r.value(cols[i], Json());
      if (v.is_object() && v.contains("center")) v = v["center"];
      out << (i ? "," : "") << csv_cell(v);
    }
    out << "\n";
  }
}

// Config header: the subcommand name and every option as given or defaulted.
Json config_of(const CLI::App* sub, const Common& common) {
  Json c;
  c["command"] = sub->get_name();
  for (const CLI::Option* o : sub->get_options()) {
    if (o->get_name() == "--help" || o->get_name().empty()) continue;
    std::string key = o->get_single_name();
    std::vector<std::string> vals = o->results();
    if (vals.empty() && !o->get_default_str().empty()) vals = {o->get_default_str()};
    if (o->get_expected_max() > 1 || o->get_items_expected_max() > 1)
      c[key] = vals;
    else
      c[key] = vals.empty() ? Json() : Json(vals.front());
  }
  c["bits"] = common.bits;
  c["threads"] = common.threads;
  c["presets"] = common.presets;
  return c;
}

struct Outcome {
  int status = Pass;
  Json result;
};

int emit(const CLI::App* sub, const Common& common, Outcome o) {
  Json doc;
  doc["artifact"] = "dioph";
  doc["version"] = DIOPH_VERSION;
  doc["config"] = config_of(sub, common);
  doc["status"] = status_name(o.status);
  doc["result"] = o.result;
  std::string text = doc.dump(2) + "\n";
  if (common.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(common.out);
    if (!out) throw Error(Errc::InvalidArgument, "cannot write " + common.out);
    out << text;
  }
  if (!common.csv.empty()) {
    if (o.result.contains("rows"))
      write_csv(common.csv, o.result);
    else
      std::cerr << "dioph: no rows in this result, CSV not written\n";
  }
  return o.status;
}

int errc_status(Errc e) {
  switch (e) {
    case Errc::InsufficientPrecision:
    case Errc::Inconclusive:
    case Errc::NotConverged:
    case Errc::InsufficientTail:
      return Inconclusive;
    case Errc::InvalidArgument:
      return Usage;
    default:
      return Fail;
  }
}

Json sys_header(const ApproxSystem& s) { return system_to_json(s); }

Json fit_row(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return Json();
  return fit_slope(x, y);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diophantine approximation experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML file with option values");
  Common common;
  app.add_option("--bits", common.bits, "working precision in bits")->envname("DIOPH_BITS")->capture_default_str();
  app.add_option("--out", common.out, "write the JSON document here instead of stdout");
  app.add_option("--csv", common.csv, "also write result rows as CSV");
  app.add_option("--presets", common.presets, "presets file (default: DIOPH_PRESETS or presets/presets.json)");
  app.add_option("--threads", common.threads, "worker threads (computations are sequential)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::function<Outcome()> action;
  CLI::App* chosen = nullptr;
  auto bind = [&](CLI::App* sub, std::function<Outcome()> fn) {
    sub->callback([&, sub, fn] {
      chosen = sub;
      action = fn;
    });
  };
  auto presets = [&] {
    return load_presets(common.presets.empty() ? default_presets_path() : common.presets);
  };

  // gen
  std::string gen_kind, gen_preset;
  int gen_upto = 20;
  auto* gen = app.add_subcommand("gen", "generate a sequence from a preset");
  gen->add_option("kind", gen_kind, "ea or fib")->required()->check(CLI::IsMember({"ea", "fib"}));
  gen->add_option("--preset", gen_preset, "ea(a), real_example(a,b,c) or padic_example(p,m)")->required();
  gen->add_option("--upto", gen_upto, "last index")->capture_default_str()->check(CLI::Range(2, 60));
  bind(gen, [&] {
    Presets ps = presets();
    Json seq;
    if (gen_kind == "ea") {
      if (!ps.is_ea(gen_preset)) throw Error(Errc::InvalidArgument, gen_preset + " is not an E_a preset");
      seq = seq_to_json(ps.ea(gen_preset, gen_upto));
    } else {
      seq = seq_to_json(ps.fib(gen_preset, gen_upto));
    }
    return Outcome{Pass, seq};
  });

  // verify
  std::string ver_what, ver_seq;
  long ver_lo = 3, ver_hi = -1;
  double ver_tol = 0.02;
  std::string ver_a, ver_p;
  auto* ver = app.add_subcommand("verify", "exact checks on a sequence file");
  ver->add_option("what", ver_what, "identities, growth, mod-a or padic")
      ->required()
      ->check(CLI::IsMember({"identities", "growth", "mod-a", "padic"}));
  ver->add_option("--seq", ver_seq, "sequence file")->required();
  ver->add_option("--k-lo", ver_lo, "first index")->capture_default_str();
  ver->add_option("--k-hi", ver_hi, "last index (default: as far as the file allows)");
  ver->add_option("--tol", ver_tol, "growth tolerance around gamma")->capture_default_str();
  ver->add_option("--a", ver_a, "modulus for mod-a (default: from the preset name)");
  ver->add_option("--p", ver_p, "prime for padic (default: from the preset name)");
  bind(ver, [&] {
    SeqFile f = load_seq(ver_seq);
    Report r;
    auto merge = [&](const Report& x) { r.checks.insert(r.checks.end(), x.checks.begin(), x.checks.end()); };
    auto name_arg = [&](size_t i) {
      auto open = f.fib.name.find('('), close = f.fib.name.find(')');
      std::string inner = f.fib.name.substr(open + 1, close - open - 1);
      std::vector<std::string> parts;
      std::stringstream ss(inner);
      for (std::string t; std::getline(ss, t, ',');) parts.push_back(t);
      if (i >= parts.size()) throw Error(Errc::InvalidArgument, "cannot read a parameter from " + f.fib.name);
      return BigInt(parts[i]);
    };
    if (f.kind == "ea") {
      if (ver_what != "identities") throw Error(Errc::InvalidArgument, ver_what + " applies to Fibonacci files");
      long hi = ver_hi < 0 ? f.ea.last() - 4 : ver_hi;
      merge(verify_identities(f.ea, ver_lo, hi));
    } else if (ver_what == "identities") {
      merge(verify_fib_symmetry(f.fib));
      merge(verify_det_multiplicative(f.fib));
      merge(verify_sandwich(f.fib, ver_hi < 0 ? f.fib.last() - 2 : static_cast<int>(ver_hi)));
    } else if (ver_what == "growth") {
      int hi = ver_hi < 0 ? f.fib.last() - 1 : static_cast<int>(ver_hi);
      int lo = ver_hi < 0 ? std::max(1, hi - 5) : static_cast<int>(ver_lo);
      merge(verify_growth(f.fib, lo, hi, ver_tol));
    } else if (ver_what == "mod-a") {
      merge(verify_mod_a(f.fib, ver_a.empty() ? name_arg(0) : BigInt(ver_a)));
    } else {
      BigInt p = ver_p.empty() ? name_arg(0) : BigInt(ver_p);
      merge(verify_padic_preset(f.fib, p, ver_hi < 0 ? f.fib.last() : static_cast<int>(ver_hi)));
    }
    return Outcome{r.ok() ? Pass : Fail, to_json(r)};
  });

  // limit
  std::string lim_seq, lim_place = "inf";
  auto* lim = app.add_subcommand("limit", "limit point of a sequence as a ball or p-adic number");
  lim->add_option("--seq", lim_seq, "sequence file")->required();
  lim->add_option("--place", lim_place, "inf or a prime")->capture_default_str();
  bind(lim, [&] {
    SeqFile f = load_seq(lim_seq);
    Json res;
    if (f.kind == "ea") {
      if (lim_place != "inf") throw Error(Errc::InvalidArgument, "E_a limits are real");
      EaLimit l = ea_limit(f.ea);
      res["xi"] = to_json(ea_xi(f.ea, l, common.bits));
      res["C"] = to_json(l.C);
      res["fit"] = {l.fit_from, l.fit_to};
    } else {
      Place pl = lim_place == "inf" ? Place::infinity() : Place::prime(BigInt(lim_place));
      FibLimit l = fib_limit(f.fib, pl, common.bits);
      res["place"] = pl.name();
      res["index"] = l.index;
      if (l.xi) res["xi"] = to_json(*l.xi);
      if (l.xi2) res["xi2"] = to_json(*l.xi2);
      if (l.xi_p) res["xi_p"] = to_json(l.xi_p->truncate(std::min(l.xi_p->abs_precision(), common.bits)));
      res["C"] = to_json(l.C);
      res["det_zero_within_radius"] = l.det_zero_within_radius;
    }
    return Outcome{Pass, res};
  });

  // frac
  std::string frac_seq, frac_poly, frac_range = "3..20";
  auto* frac = app.add_subcommand("frac", "fractional parts x_{k,0} R(xi) along an E_a sequence");
  frac->add_option("--seq", frac_seq, "E_a sequence file")->required();
  frac->add_option("--poly", frac_poly, "coefficients, highest degree first, e.g. 1,0,0,0")->required();
  frac->add_option("--range", frac_range, "k range A..B")->capture_default_str();
  bind(frac, [&] {
    SeqFile f = load_seq(frac_seq);
    const EaSeq& s = need_ea(f);
    auto [a, b] = range_arg(frac_range);
    FracSeries fs = frac_series(s, ea_limit(s), poly_arg(frac_poly), a, b);
    Json res;
    res["R"] = to_json(fs.R);
    res["period"] = fs.period;
    res["bits"] = fs.bits;
    std::vector<Json> rows;
    bool all = true;
    for (const auto& r : fs.rows) {
      rows.push_back({{"k", r.k}, {"value", to_json(r.value)}, {"conclusive", r.conclusive}});
      all = all && r.conclusive;
    }
    res["rows"] = rows_json(rows);
    std::vector<Json> diffs;
    for (const auto& d : fs.diffs) diffs.push_back({{"k", d.k}, {"diff", to_json(d.diff)}, {"scaled", d.scaled}});
    res["diffs"] = rows_json(diffs);
    res["C"] = fs.C;
    return Outcome{all ? Pass : Inconclusive, res};
  });

  // accum
  std::string acc_seq, acc_poly, acc_range;
  auto* acc = app.add_subcommand("accum", "accumulation points of the fractional parts");
  acc->add_option("--seq", acc_seq, "E_a sequence file")->required();
  acc->add_option("--poly", acc_poly, "coefficients, highest degree first")->required();
  acc->add_option("--range", acc_range, "k range A..B (default 3..last-3)");
  bind(acc, [&] {
    SeqFile f = load_seq(acc_seq);
    const EaSeq& s = need_ea(f);
    long a = 3, b = s.last() - 3;
    if (!acc_range.empty()) std::tie(a, b) = range_arg(acc_range);
    FracSeries fs = frac_series(s, ea_limit(s), poly_arg(acc_poly), a, b);
    auto pts = accumulation_points(s, fs);
    std::vector<Json> rows;
    bool ok = true;
    for (const auto& p : pts) {
      rows.push_back({{"l", p.l}, {"limit", to_json(p.limit)}, {"rate", p.rate}, {"positive", p.positive},
                      {"converged", p.converged}, {"members", p.members}});
      ok = ok && p.converged;
    }
    Json res;
    res["R"] = to_json(fs.R);
    res["C"] = fs.C;
    res["rows"] = rows_json(rows);
    return Outcome{ok ? Pass : Inconclusive, res};
  });

  // cf
  std::string cf_from, cf_seq, cf_poly;
  int cf_l = 0;
  size_t cf_count = 20;
  auto* cf = app.add_subcommand("cf", "certified continued fraction expansion");
  cf->add_option("--value-from", cf_from, "xi, accum, a rational p/q or a decimal")->required();
  cf->add_option("--seq", cf_seq, "E_a sequence file for xi or accum");
  cf->add_option("--poly", cf_poly, "R for accum");
  cf->add_option("--l", cf_l, "residue class for accum")->capture_default_str();
  cf->add_option("--count", cf_count, "number of partial quotients")->capture_default_str();
  bind(cf, [&] {
    ContinuedFraction c;
    Json res;
    res["source"] = cf_from;
    if (cf_from == "xi" || cf_from == "accum") {
      if (cf_seq.empty()) throw Error(Errc::InvalidArgument, "--seq is required for " + cf_from);
      SeqFile f = load_seq(cf_seq);
      const EaSeq& s = need_ea(f);
      EaLimit lim = ea_limit(s);
      RealBall v;
      if (cf_from == "xi") {
        v = ea_xi(s, lim, common.bits);
      } else {
        if (cf_poly.empty()) throw Error(Errc::InvalidArgument, "--poly is required for accum");
        FracSeries fs = frac_series(s, lim, poly_arg(cf_poly), 3, s.last() - 3);
        auto pts = accumulation_points(s, fs);
        auto it = std::find_if(pts.begin(), pts.end(), [&](const AccumulationPoint& p) { return p.l == cf_l; });
        if (it == pts.end()) throw Error(Errc::InvalidArgument, "no class l = " + std::to_string(cf_l));
        v = it->limit;
      }
      res["value"] = to_json(v);
      c = cf_expand(v, cf_count);
    } else if (cf_from.find('/') != std::string::npos) {
      c = cf_exact(parse_rational(cf_from));
      res["value"] = to_json(parse_rational(cf_from));
    } else {
      RealBall v = RealBall::parse(cf_from, common.bits);
      res["value"] = to_json(v);
      c = cf_certified(v, cf_count);
    }
    res["quotients"] = to_json(IntVec(c.quotients.begin(), c.quotients.end()));
    Json conv = Json::array();
    for (const auto& q : c.convergents) conv.push_back(to_json(q));
    res["convergents"] = conv;
    res["terminated"] = c.terminated;
    return Outcome{Pass, res};
  });

  // deg3 / deg4
  std::string dg_seq, dg_poly, dg_range;
  int dg_l = 0;
  auto add_deg = [&](const char* name, bool four) {
    auto* sub = app.add_subcommand(name, four ? "degree-4 accumulation constructions" : "degree-3 convergents");
    sub->add_option("--seq", dg_seq, "E_a sequence file")->required();
    sub->add_option("--poly", dg_poly, "coefficients, highest degree first")->required();
    sub->add_option("--l", dg_l, "residue class")->capture_default_str();
    sub->add_option("--range", dg_range, "k range A..B (default 5..last-6)");
    bind(sub, [&, four] {
      SeqFile f = load_seq(dg_seq);
      const EaSeq& s = need_ea(f);
      long a = 5, b = s.last() - 6;
      if (!dg_range.empty()) std::tie(a, b) = range_arg(dg_range);
      IntPoly R = poly_arg(dg_poly);
      EaLimit lim = ea_limit(s);
      ConvergentReport rep = four ? verify_deg4_accumulation(s, lim, R, dg_l, a, b)
                                  : verify_deg3_convergents(s, lim, R, dg_l, a, b);
      Json res;
      res["R"] = to_json(rep.R);
      res["l"] = rep.l;
      res["limit"] = to_json(rep.limit);
      std::vector<Json> rows;
      for (const auto& r : rep.rows)
        rows.push_back({{"k", r.k}, {"kind", r.kind}, {"num", to_json(r.num)}, {"den", to_json(r.den)},
                        {"gcd", to_json(r.gcd)}, {"log_X", r.log_X}, {"log_err", r.log_err},
                        {"err_certified", r.err_certified}, {"is_convergent", r.is_convergent}});
      res["rows"] = rows_json(rows);
      res["slope1"] = rep.slope1;
      res["slope2"] = rep.slope2;
      res["n_convergent1"] = rep.n_convergent1;
      res["n_convergent2"] = rep.n_convergent2;
      res["exact"] = to_json(rep.exact);
      return Outcome{rep.exact.ok() ? Pass : Fail, res};
    });
  };
  add_deg("deg3", false);
  add_deg("deg4", true);

  // alt0
  std::string a0_seq, a0_poly;
  Alt0Config a0;
  auto* alt0 = app.add_subcommand("alt0", "desk scan of |R(xi) + P(xi)| H(P)^gamma");
  alt0->add_option("--seq", a0_seq, "E_a sequence file")->required();
  alt0->add_option("--poly", a0_poly, "R, highest degree first")->required();
  alt0->add_option("--exhaustive", a0.exhaustive_height, "exhaustive height bound")->capture_default_str();
  alt0->add_option("--max-height", a0.max_height, "last decade bound")->capture_default_str();
  alt0->add_option("--samples", a0.samples_per_decade, "samples per decade")->capture_default_str();
  alt0->add_option("--grid-height", a0.r_grid_height, "height bound of the R grid")->capture_default_str();
  alt0->add_option("--seed", a0.seed, "RNG seed")->capture_default_str();
  bind(alt0, [&] {
    SeqFile f = load_seq(a0_seq);
    const EaSeq& s = need_ea(f);
    Alt0Report rep = alt0_scan(s, ea_limit(s), poly_arg(a0_poly), a0);
    Json res;
    res["R"] = to_json(rep.R);
    res["exhaustive_height"] = rep.exhaustive_height;
    res["exhaustive_min"] = to_json(rep.exhaustive_min);
    res["exhaustive_argmin"] = to_json(IntVec(rep.exhaustive_argmin.begin(), rep.exhaustive_argmin.end()));
    std::vector<Json> rows;
    for (const auto& d : rep.decades)
      rows.push_back({{"lo", d.lo}, {"hi", d.hi}, {"best", to_json(d.best)},
                      {"best_p", to_json(IntVec(d.best_p.begin(), d.best_p.end()))}, {"samples", d.samples}});
    res["rows"] = rows_json(rows);
    res["decade_slope"] = rep.decade_slope;
    res["r_value"] = to_json(rep.r_value);
    res["r_grid_min"] = to_json(rep.r_grid_min);
    bool ok = rep.exhaustive_min.positive() && rep.decade_slope >= -0.05 && rep.r_grid_min.positive();
    return Outcome{ok ? Pass : Fail, res};
  });

  // systems
  std::string sys_file;
  std::vector<std::string> sys_X;
  std::string sys_cap, sys_R;
  auto load_system = [&] { return system_from_json(load_json(sys_file), presets(), common.bits); };
  auto X_values = [&] {
    std::vector<BigRat> xs;
    for (const auto& s : sys_X) {
      BigRat x = parse_rational(s);
      if (x < 1) throw Error(Errc::InvalidArgument, "X must be >= 1");
      xs.push_back(x);
    }
    return xs;
  };

  auto* search = app.add_subcommand("search", "exhaustive solutions of the approximation system");
  search->add_option("--system", sys_file, "system file")->required();
  search->add_option("--X", sys_X, "one or more X")->required();
  search->add_option("--cap", sys_cap, "norm cap (default X)");
  bind(search, [&] {
    ApproxSystem s = load_system();
    std::vector<Json> rows;
    bool zs = true;
    for (const auto& X : X_values()) {
      BigRat cap = sys_cap.empty() ? X : parse_rational(sys_cap);
      SolutionSet sol = enumerate_solutions(s, X, cap);
      Json prim = Json::array(), mins = Json::array();
      for (const auto& v : sol.primitives) prim.push_back(to_json(v));
      for (const auto& v : sol.minimal()) mins.push_back(to_json(v));
      rows.push_back({{"X", to_json(X)}, {"count", sol.solutions.size()}, {"candidates", sol.candidates},
                      {"zs_factoring_ok", sol.zs_factoring_ok}, {"minimal", mins}, {"primitives", prim}});
      zs = zs && sol.zs_factoring_ok;
    }
    Json res;
    res["system"] = sys_header(s);
    res["rows"] = rows_json(rows);
    return Outcome{zs ? Pass : Fail, res};
  });

  auto* mink = app.add_subcommand("minkowski", "lattice construction and certified point");
  mink->add_option("--system", sys_file, "system file")->required();
  mink->add_option("--X", sys_X, "one or more X")->required();
  bind(mink, [&] {
    ApproxSystem s = load_system();
    std::vector<Json> rows;
    bool ok = true;
    for (const auto& X : X_values()) {
      MinkowskiReport r = minkowski_construct(s, X);
      Json basis = Json::array();
      for (const auto& u : r.basis) basis.push_back(to_json(u));
      rows.push_back({{"X", to_json(X)}, {"branch", r.branch}, {"M", to_json(r.M)}, {"d0", to_json(r.d0)},
                      {"b", to_json(r.b)}, {"n_p", r.n_p}, {"basis", basis}, {"det", to_json(r.det)},
                      {"volume", to_json(r.volume)}, {"rhs", to_json(r.rhs)}, {"point", to_json(r.point)},
                      {"verified", r.check.ok()}});
      ok = ok && r.check.ok();
    }
    Json res;
    res["system"] = sys_header(s);
    res["rows"] = rows_json(rows);
    return Outcome{ok ? Pass : Fail, res};
  });

  DualConfig dual_cfg;
  auto* dualize = app.add_subcommand("dualize", "n+1 independent dual points");
  dualize->add_option("--system", sys_file, "system file")->required();
  dualize->add_option("--X", sys_X, "one or more X")->required();
  dualize->add_option("--max-doublings", dual_cfg.max_doublings, "relaxation budget")->capture_default_str();
  bind(dualize, [&] {
    ApproxSystem s = load_system();
    std::vector<Json> rows;
    for (const auto& X : X_values()) {
      DualPoints d = dual_points(s, X, dual_cfg);
      Json pts = Json::array();
      for (const auto& y : d.points) pts.push_back(to_json(y));
      rows.push_back({{"X", to_json(X)}, {"dual_points", pts}, {"det", to_json(d.det)}, {"K1", d.K1},
                      {"K2", d.K2}, {"doublings", d.doublings}, {"a", to_json(d.a)}, {"b", to_json(d.b)},
                      {"candidates", d.candidates}});
    }
    Json res;
    res["system"] = sys_header(s);
    res["rows"] = rows_json(rows);
    return Outcome{Pass, res};
  });

  auto* ap = app.add_subcommand("approx-poly", "dual points, polynomial construction and root extraction");
  ap->add_option("--system", sys_file, "system file")->required();
  ap->add_option("--R", sys_R, "R, highest degree first")->required();
  ap->add_option("--X", sys_X, "one or more X")->required();
  ap->add_option("--max-doublings", dual_cfg.max_doublings, "relaxation budget")->capture_default_str();
  bind(ap, [&] {
    ApproxSystem s = load_system();
    IntPoly R = poly_arg(sys_R);
    std::vector<Json> rows;
    std::vector<double> lh, ld;
    bool ok = true;
    for (const auto& X : X_values()) {
      PipelineRow row = approx_poly(s, R, X, dual_cfg);
      Json pts = Json::array();
      for (const auto& y : row.dual.points) pts.push_back(to_json(y));
      Json cert;
      cert["eps"] = to_json(row.poly.eps);
      cert["N"] = to_json(row.poly.N);
      cert["halvings"] = row.poly.halvings;
      cert["value_inf"] = to_json(row.poly.value_inf);
      cert["deriv_inf"] = to_json(row.poly.deriv_inf);
      cert["value_band_ok"] = row.poly.value_band_ok;
      cert["deriv_band_ok"] = row.poly.deriv_band_ok;
      Json pp = Json::array();
      for (const auto& p : row.poly.padic)
        pp.push_back({{"p", to_json(p.p)}, {"k_p", p.k_p}, {"value_abs", to_json(p.value_abs)},
                      {"expected_value_abs", to_json(p.expected_value_abs)}, {"deriv_abs", to_json(p.deriv_abs)},
                      {"rho_abs", to_json(p.rho_abs)}, {"value_ok", p.value_ok}, {"deriv_ok", p.deriv_ok}});
      cert["padic"] = pp;
      Json roots;
      if (row.roots.has_real) {
        roots["alpha_inf"] = to_json(row.roots.alpha_inf);
        roots["dist_inf"] = to_json(row.roots.dist_inf);
        roots["predicted_inf"] = row.roots.predicted_inf;
        lh.push_back(std::log(row.H.get_d()));
        ld.push_back(row.roots.dist_inf.log_mid());
      }
      Json pr = Json::array();
      for (const auto& r : row.roots.padic)
        pr.push_back({{"p", to_json(r.p)}, {"alpha", to_json(r.alpha)}, {"dist", to_json(r.dist)},
                      {"bound", to_json(r.bound)}, {"integral", r.integral}, {"predicted", r.predicted}});
      roots["padic"] = pr;
      rows.push_back({{"X", to_json(X)}, {"dual_points", pts}, {"polynomial", to_json(row.F)}, {"H", to_json(row.H)},
                      {"certificates", cert}, {"roots", roots}});
      ok = ok && row.poly.ok();
    }
    Json res;
    res["system"] = sys_header(s);
    res["R"] = to_json(R);
    res["rows"] = rows_json(rows);
    res["fitted_exponent"] = fit_row(lh, ld);
    return Outcome{ok ? Pass : Fail, res};
  });

  // thresholds
  std::string th_which = "real", th_tol = "1e-9";
  auto* th = app.add_subcommand("thresholds", "exponent threshold roots by certified bisection");
  th->add_option("--which", th_which, "real or padic")->check(CLI::IsMember({"real", "padic"}))->capture_default_str();
  th->add_option("--tol", th_tol, "root ball radius")->capture_default_str();
  bind(th, [&] {
    Flavor fl = th_which == "real" ? Flavor::Real : Flavor::Padic;
    BigRat tol = parse_rational(th_tol);
    if (tol <= 0) throw Error(Errc::InvalidArgument, "tol must be positive");
    std::vector<Json> rows;
    for (const auto& r : threshold_table(fl, tol))
      rows.push_back({{"name", r.name}, {"equation", equation_name(r.eq)}, {"lo", to_json(r.lo)},
                      {"hi", to_json(r.hi)}, {"value", to_json(r.value)}, {"quoted", r.quoted}, {"delta", r.delta},
                      {"note", r.note}});
    Report checks = threshold_checks(fl);
    Json res;
    res["rows"] = rows_json(rows);
    res["checks"] = to_json(checks);
    return Outcome{checks.ok() ? Pass : Fail, res};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Usage;
  }

  try {
    return emit(chosen, common, action());
  } catch (const Error& e) {
    int st = errc_status(e.code());
    std::cerr << "dioph: " << e.what() << "\n";
    if (st == Usage) return Usage;
    Json res;
    res["error"] = errc_name(e.code());
    res["message"] = e.what();
    try {
      emit(chosen, common, Outcome{st, res});
    } catch (const Error&) {
    }
    return st;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "dioph: malformed input: " << e.what() << "\n";
    return Usage;
  } catch (const std::exception& e) {
    std::cerr << "dioph: internal error: " << e.what() << "\n";
    return Internal;
  }
}
