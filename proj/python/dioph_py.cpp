// Python bindings. Structured results cross the boundary as JSON text
// (the same forms the CLI writes) and are decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "dioph/approx.hpp"
#include "dioph/duality.hpp"
#include "dioph/error.hpp"
#include "dioph/fib.hpp"
#include "dioph/io.hpp"
#include "dioph/thresholds.hpp"
#include "dioph/version.hpp"

namespace py = pybind11;
using namespace dioph;

namespace {

BigInt big(const py::handle& h) { return BigInt(py::str(h).cast<std::string>()); }

py::object pyint(const BigInt& v) { return py::module_::import("builtins").attr("int")(v.get_str()); }

Point3 point(const std::vector<py::object>& v) {
  if (v.size() != 3) throw Error(Errc::InvalidArgument, "a point needs three coordinates");
  return {big(v[0]), big(v[1]), big(v[2])};
}

py::tuple tup(const Point3& p) { return py::make_tuple(pyint(p.x0), pyint(p.x1), pyint(p.x2)); }

std::string dump(const Json& j) { return j.dump(); }

Presets presets_at(const std::string& path) { return load_presets(path.empty() ? default_presets_path() : path); }

Json check_json(const PointCheck& c) {
  Json j;
  j["norm"] = c.norm_ok;
  j["inf"] = c.inf_ok;
  j["p"] = c.p_ok;
  j["ok"] = c.ok();
  return j;
}

}  // namespace

PYBIND11_MODULE(_dioph, m) {
  m.doc() = "Exact arithmetic and certified experiments around extremal numbers.";

  static py::exception<Error> err(m, "DiophError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object code = py::str(errc_name(e.code()));
      PyErr_SetObject(err.ptr(), py::make_tuple(code, e.what()).ptr());
    }
  });

  m.attr("__version__") = DIOPH_VERSION;

  m.def("det3", [](std::vector<py::object> x, std::vector<py::object> y, std::vector<py::object> z) {
    return pyint(det3(point(x), point(y), point(z)));
  });
  m.def("wedge", [](std::vector<py::object> x, std::vector<py::object> y) { return tup(wedge(point(x), point(y))); });
  m.def("fibonacci", [](long i) { return pyint(fibonacci(i)); });

  m.def(
      "ea_terms",
      [](long a, int upto) {
        auto [x1, x2] = find_ea_seed(a, 3);
        EaSeq s = make_ea(a, x1, x2);
        extend_ea(s, upto);
        py::list out;
        for (int k = 1; k <= s.last(); ++k) out.append(tup(s.at(k)));
        return out;
      },
      py::arg("a"), py::arg("upto"));

  m.def(
      "sequence_json",
      [](const std::string& preset, int upto, const std::string& presets) {
        Presets p = presets_at(presets);
        return p.is_ea(preset) ? dump(seq_to_json(p.ea(preset, upto))) : dump(seq_to_json(p.fib(preset, upto)));
      },
      py::arg("preset"), py::arg("upto"), py::arg("presets") = "");

  m.def(
      "verify_identities_json",
      [](const std::string& seq, long k_lo, long k_hi) {
        EaSeq s = ea_from_json(Json::parse(seq));
        if (k_hi < 0) k_hi = s.last() - 4;
        return dump(to_json(verify_identities(s, k_lo, k_hi)));
      },
      py::arg("seq"), py::arg("k_lo") = 3, py::arg("k_hi") = -1);

  m.def(
      "ea_xi_json",
      [](const std::string& seq, long bits) {
        EaSeq s = ea_from_json(Json::parse(seq));
        return dump(to_json(ea_xi(s, ea_limit(s), bits)));
      },
      py::arg("seq"), py::arg("bits") = 256);

  m.def(
      "threshold_table_json",
      [](const std::string& flavor, const std::string& tol) {
        Flavor f = flavor == "real" ? Flavor::Real : flavor == "padic" ? Flavor::Padic
                                                                        : throw Error(Errc::InvalidArgument, "flavor must be real or padic");
        Json rows = Json::array();
        for (const auto& r : threshold_table(f, parse_rational(tol))) {
          Json j;
          j["name"] = r.name;
          j["equation"] = equation_name(r.eq);
          j["value"] = to_json(r.value);
          j["quoted"] = r.quoted;
          j["delta"] = r.delta;
          j["note"] = r.note;
          rows.push_back(j);
        }
        return dump(rows);
      },
      py::arg("flavor"), py::arg("tol") = "1e-8");

  m.def(
      "hensel_lift_json",
      [](const std::string& poly, py::object xi, py::object p, long prec, long target) {
        HenselResult h = hensel_lift(parse_poly(poly), PadicNumber::from_int(big(xi), big(p), prec), target);
        Json j;
        j["root"] = to_json(h.root);
        j["residual_valuation"] = h.residual_valuation;
        j["dist"] = to_json(h.dist);
        j["bound"] = to_json(h.bound);
        return dump(j);
      },
      py::arg("poly"), py::arg("xi"), py::arg("p"), py::arg("prec"), py::arg("target"));

  m.def(
      "strong_approx",
      [](const std::string& xi_inf, const std::string& eps_inf, std::vector<std::tuple<py::object, py::object, long, std::string>> targets) {
        std::vector<PadicTarget> t;
        for (const auto& [p, xi, prec, eps] : targets)
          t.push_back({PadicNumber::from_int(big(xi), big(p), prec), parse_rational(eps)});
        return to_json(strong_approx({parse_rational(xi_inf), parse_rational(eps_inf)}, t)).get<std::string>();
      },
      py::arg("xi_inf"), py::arg("eps_inf"), py::arg("targets"));

  m.def(
      "search_json",
      [](const std::string& system, const std::string& X, const std::string& presets, long bits) {
        ApproxSystem s = system_from_json(Json::parse(system), presets_at(presets), bits);
        BigRat x = parse_rational(X);
        SolutionSet sol = enumerate_solutions(s, x, x);
        Json j;
        j["X"] = to_json(sol.X);
        j["count"] = sol.solutions.size();
        j["candidates"] = sol.candidates;
        Json mins = Json::array();
        for (const auto& v : sol.minimal()) mins.push_back(to_json(v));
        j["minimal"] = mins;
        Json prim = Json::array();
        for (const auto& v : sol.primitives) prim.push_back(to_json(v));
        j["primitives"] = prim;
        return dump(j);
      },
      py::arg("system"), py::arg("X"), py::arg("presets") = "", py::arg("bits") = 256);

  m.def(
      "minkowski_json",
      [](const std::string& system, const std::string& X, const std::string& presets, long bits) {
        ApproxSystem s = system_from_json(Json::parse(system), presets_at(presets), bits);
        MinkowskiReport r = minkowski_construct(s, parse_rational(X));
        Json j;
        j["branch"] = r.branch;
        j["point"] = to_json(r.point);
        j["det"] = to_json(r.det);
        j["volume"] = to_json(r.volume);
        j["rhs"] = to_json(r.rhs);
        j["check"] = check_json(r.check);
        return dump(j);
      },
      py::arg("system"), py::arg("X"), py::arg("presets") = "", py::arg("bits") = 256);

  m.def(
      "approx_poly_json",
      [](const std::string& system, const std::string& R, const std::string& X, const std::string& presets, long bits) {
        ApproxSystem s = system_from_json(Json::parse(system), presets_at(presets), bits);
        PipelineRow row = approx_poly(s, parse_poly(R), parse_rational(X));
        Json j;
        j["X"] = to_json(row.X);
        Json pts = Json::array();
        for (const auto& v : row.dual.points) pts.push_back(to_json(v));
        j["dual_points"] = pts;
        j["P"] = to_json(row.poly.P);
        j["F"] = to_json(row.F);
        j["H"] = to_json(row.H);
        j["certificate_ok"] = row.poly.ok();
        if (row.roots.has_real) {
          j["alpha_inf"] = to_json(row.roots.alpha_inf);
          j["dist_inf"] = to_json(row.roots.dist_inf);
        }
        Json pr = Json::array();
        for (const auto& r : row.roots.padic) {
          Json q;
          q["p"] = to_json(r.p);
          q["alpha"] = to_json(r.alpha);
          q["dist"] = to_json(r.dist);
          q["bound"] = to_json(r.bound);
          q["integral"] = r.integral;
          pr.push_back(q);
        }
        j["padic_roots"] = pr;
        return dump(j);
      },
      py::arg("system"), py::arg("R"), py::arg("X"), py::arg("presets") = "", py::arg("bits") = 256);
}
