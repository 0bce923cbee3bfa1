#pragma once

// JSON forms of the library types. Big integers and rationals are always
// decimal strings; balls are {center, radius, bits}.

#include <string>

#include <json.hpp>

#include "dioph/approx.hpp"
#include "dioph/ball.hpp"
#include "dioph/core.hpp"
#include "dioph/duality.hpp"
#include "dioph/fib.hpp"
#include "dioph/padic.hpp"
#include "dioph/report.hpp"

namespace dioph {

using Json = nlohmann::ordered_json;

Json to_json(const BigInt& v);
Json to_json(const BigRat& v);  // "p/q" or "p"
Json to_json(const RealBall& b);
Json to_json(const PadicNumber& x);
Json to_json(const IntVec& v);
Json to_json(const Point3& x);
Json to_json(const Mat2& m);
Json to_json(const IntPoly& p);  // highest degree first
Json to_json(const Report& r);

BigInt big_from_json(const Json& j);  // string or integer
BigRat rat_from_json(const Json& j);  // "p/q", decimal string, or integer
PadicNumber padic_from_json(const Json& j);
IntVec intvec_from_json(const Json& j);
Point3 point_from_json(const Json& j);
Mat2 mat_from_json(const Json& j);

// "0.25" or "-3/7" or "12" as an exact rational.
BigRat parse_rational(const std::string& s);

// Sequence files: {kind, params, terms: [{i, w, y, det_w, eps}]}.
Json seq_to_json(const EaSeq& s);
Json seq_to_json(const FibSeq& s);
// The terms are taken as stored, without regeneration, so a damaged file
// is caught by the verifiers.
EaSeq ea_from_json(const Json& j);
FibSeq fib_from_json(const Json& j);

struct Presets {
  Json data;
  // ea(a), real_example(a,b,c), padic_example(p,m). Pinned entries in
  // the file win; otherwise the parameters are read from the name.
  EaSeq ea(const std::string& name, int upto) const;
  FibSeq fib(const std::string& name, int upto) const;
  bool is_ea(const std::string& name) const;
};

Presets load_presets(const std::string& path);
// DIOPH_PRESETS, then presets/presets.json next to the source tree.
std::string default_presets_path();

// System file: {n, S: [p...], xi: {inf: ref|decimal, "<p>": ref|padic},
// lambda: {inf: q, "<p>": q}, c: q}. A ref is "preset:<name>".
ApproxSystem system_from_json(const Json& j, const Presets& presets, long bits);
Json system_to_json(const ApproxSystem& s);

}  // namespace dioph
