#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "rc/observers.hpp"
#include "rc/rc_engine.hpp"
#include "rc/separation.hpp"
#include "rc/width.hpp"

namespace rc {

using Json = nlohmann::ordered_json;

// Malformed input; the message starts with the offending location.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void bad(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

inline Int int_of(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<Int>();
}

inline Q q_of(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return make_q(j.get<Int>());
  if (!j.is_string()) bad(where, "expected a rational string \"p/q\"");
  try {
    return parse_q(j.get<std::string>());
  } catch (const std::exception& e) {
    bad(where, e.what());
  }
}

}  // namespace detail

inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json read_json_file(const std::string& path) { return parse_json_text(read_file(path), path); }

inline Json to_json(const IntVec& v) {
  Json a = Json::array();
  for (Int x : v) a.push_back(x);
  return a;
}

inline Json to_json(const QVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline Json to_json(const PointSet& X) {
  Json pts = Json::array();
  for (const auto& p : X) pts.push_back(to_json(p));
  return Json{{"dim", X.dim()}, {"points", pts}};
}

inline Json to_json(const LinearInequality& c) {
  return Json{{"a", to_json(c.a)}, {"rel", to_string(c.rel)}, {"b", to_string(c.b)}};
}

inline Json to_json(int dim, const std::vector<LinearInequality>& rows) {
  Json cs = Json::array();
  for (const auto& c : rows) cs.push_back(to_json(c));
  return Json{{"dim", dim}, {"constraints", cs}};
}

inline Json to_json(const HPolyhedron& P) { return to_json(P.dim, P.constraints); }

inline PointSet point_set_from_json(const Json& j, const std::string& where = "$") {
  Int d = detail::int_of(detail::field(j, "dim", where), where + ".dim");
  if (d <= 0 || d > 64) detail::bad(where + ".dim", "dimension must be in 1..64");
  const Json& pts = detail::field(j, "points", where);
  if (!pts.is_array()) detail::bad(where + ".points", "expected an array");
  std::vector<IntVec> v;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::string w = where + ".points[" + std::to_string(i) + "]";
    if (!pts[i].is_array() || pts[i].size() != static_cast<std::size_t>(d))
      detail::bad(w, "expected " + std::to_string(d) + " integers");
    IntVec p;
    for (std::size_t k = 0; k < pts[i].size(); ++k) p.push_back(detail::int_of(pts[i][k], w + "[" + std::to_string(k) + "]"));
    v.push_back(std::move(p));
  }
  return PointSet(static_cast<int>(d), std::move(v));
}

inline LinearInequality inequality_from_json(const Json& j, int d, const std::string& where) {
  const Json& a = detail::field(j, "a", where);
  if (!a.is_array() || a.size() != static_cast<std::size_t>(d))
    detail::bad(where + ".a", "expected " + std::to_string(d) + " coefficients");
  LinearInequality c;
  for (std::size_t k = 0; k < a.size(); ++k) c.a.push_back(detail::q_of(a[k], where + ".a[" + std::to_string(k) + "]"));
  c.b = detail::q_of(detail::field(j, "b", where), where + ".b");
  const Json& rel = detail::field(j, "rel", where);
  std::string r = rel.is_string() ? rel.get<std::string>() : "";
  if (r == "LE") c.rel = Rel::LE;
  else if (r == "LT") c.rel = Rel::LT;
  else if (r == "EQ") c.rel = Rel::EQ;
  else detail::bad(where + ".rel", "expected \"LE\", \"LT\" or \"EQ\"");
  return c;
}

inline HPolyhedron polyhedron_from_json(const Json& j, const std::string& where = "$") {
  Int d = detail::int_of(detail::field(j, "dim", where), where + ".dim");
  if (d <= 0 || d > 64) detail::bad(where + ".dim", "dimension must be in 1..64");
  const Json& cs = detail::field(j, "constraints", where);
  if (!cs.is_array()) detail::bad(where + ".constraints", "expected an array");
  HPolyhedron P(static_cast<int>(d));
  for (std::size_t i = 0; i < cs.size(); ++i)
    P.add(inequality_from_json(cs[i], P.dim, where + ".constraints[" + std::to_string(i) + "]"));
  return P;
}

// An HPolyhedron, or any result object carrying one under "certificate".
inline HPolyhedron certificate_from_json(const Json& j) {
  if (j.is_object() && j.contains("constraints")) return polyhedron_from_json(j);
  if (j.is_object() && j.contains("certificate")) {
    const Json& c = j["certificate"];
    if (c.is_object() && c.contains("system")) return polyhedron_from_json(c["system"], "$.certificate.system");
    return polyhedron_from_json(c, "$.certificate");
  }
  detail::bad("$", "expected an HPolyhedron or an object with a certificate");
}

inline Json to_json(const WidthData& W) {
  Json dirs = Json::array();
  for (const auto& w : W.directions)
    dirs.push_back(Json{{"u", to_json(w.u)}, {"dim_plus", w.dim_plus}, {"dim_minus", w.dim_minus}});
  return Json{{"width", W.width}, {"directions", dirs}};
}

inline Json to_json(const FinitenessCertificate& C) {
  Json j{{"verdict", to_string(C.verdict)}};
  for (const auto& [k, v] : C.parameters) j[k] = v;
  return j;
}

inline Json to_json(const ObserverResult& O) {
  Json obs = Json::array();
  for (const auto& y : O.observers) obs.push_back(to_json(y));
  return Json{{"observers", obs}, {"certificate", to_json(O.certificate)}};
}

inline Json to_json(const PointSet& X, const SeparationResult& S) {
  Json j{{"status", to_string(S.status)}, {"lower", S.lower}};
  if (S.certificate) {
    Json asg = Json::array();
    for (const auto& [y, g] : S.certificate->assignment) asg.push_back(Json{{"y", to_json(y)}, {"row", g}});
    j["k"] = S.certificate->k;
    j["certificate"] = Json{{"system", to_json(X.dim(), S.certificate->system)}, {"assignment", asg}};
  }
  return j;
}

inline Json to_json(const PointSet& X, const RcResult& R) {
  Json j;
  j["lower"] = R.lower;
  j["lower_reason"] = R.lower_reason;
  j["upper"] = R.upper ? Json(*R.upper) : Json(nullptr);
  j["certificate"] = R.certificate.empty() ? Json(nullptr) : to_json(X.dim(), R.certificate);
  j["status"] = to_string(R.status);
  j["case"] = R.case_tag ? Json(to_string(*R.case_tag)) : Json(nullptr);
  j["route"] = R.route;
  Json det = Json::object();
  for (const auto& [k, v] : R.details) det[k] = v;
  j["details"] = det;
  return j;
}

}  // namespace rc
