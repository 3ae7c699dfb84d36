#include "rc/cli.hpp"

#include "rc/bounds.hpp"
#include "rc/formula.hpp"
#include "rc/qelim.hpp"

namespace rc::cli {

// Default budget, overridable through RCX_BUDGET.
std::size_t default_budget() {
  if (const char* s = std::getenv("RCX_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw InputError("RCX_BUDGET: expected a positive integer");
  }
  return 10000;
}

namespace {

inline void need_inputs(const RunConfig& c, std::size_t n, const char* usage) {
  if (c.inputs.size() != n) throw InputError(c.command + ": expected " + usage);
}

inline Outcome check_convex(const RunConfig& c) {
  need_inputs(c, 1, "one point-set file");
  PointSet X = point_set_from_json(read_json_file(c.inputs[0]));
  Json j{{"lattice_convex", is_lattice_convex(X)}, {"dim", X.dim()}, {"affine_dim", affine_dimension(X)}};
  if (!X.empty() && !is_lattice_convex(X)) {
    auto extra = lattice_points(convex_hull(X)).minus(X);
    j["extra_point"] = to_json(extra[0]);
  }
  return {Exit::Ok, j};
}

inline Outcome width(const RunConfig& c) {
  need_inputs(c, 1, "one point-set file");
  PointSet X = point_set_from_json(read_json_file(c.inputs[0]));
  if (X.empty()) throw InputError(c.inputs[0] + ": empty point set");
  return {Exit::Ok, to_json(lattice_width(X))};
}

inline Outcome observers(const RunConfig& c) {
  need_inputs(c, 1, "one point-set file");
  PointSet X = point_set_from_json(read_json_file(c.inputs[0]));
  require_lattice_convex(X);
  ObserverSearch s;
  s.budget = c.budget.value_or(default_budget());
  auto O = compute_observers(X, s);
  Json j = to_json(O);
  j["budget"] = s.budget;
  return {O.certificate.finite() ? Exit::Ok : Exit::Undecided, j};
}

inline Outcome rc(const RunConfig& c) {
  need_inputs(c, 1, "one point-set file");
  PointSet X = point_set_from_json(read_json_file(c.inputs[0]));
  RcOptions o;
  o.mode = c.mode;
  o.max_k = c.max_k;
  o.budget = c.budget.value_or(default_budget());
  if (c.mode == Mode::Practical) o.asymmetry_constant = c.asymmetry_constant.value_or(kAsymmetryConstant);
  if (c.box) o.box_limit = static_cast<std::size_t>(*c.box);
  auto R = rc_dispatch(X, o);
  Json j = to_json(X, R);
  j["mode"] = c.mode == Mode::Rigorous ? "rigorous" : "practical";
  j["asymmetry_constant"] = o.asymmetry_constant ? Json(*o.asymmetry_constant) : Json(nullptr);
  j["budget"] = o.budget;
  j["max_k"] = o.max_k;
  return {R.status == RcStatus::BoundsOnly ? Exit::Undecided : Exit::Ok, j};
}

inline std::pair<PointSet, PointSet> two_sets(const RunConfig& c) {
  need_inputs(c, 2, "files X and Y");
  PointSet X = point_set_from_json(read_json_file(c.inputs[0]));
  PointSet Y = point_set_from_json(read_json_file(c.inputs[1]));
  if (X.dim() != Y.dim()) throw InputError("X and Y have different dimensions");
  if (!X.disjoint(Y)) throw InputError("X and Y overlap");
  if (X.empty()) throw InputError(c.inputs[0] + ": empty point set");
  return {X, Y};
}

inline Outcome rc_relative(const RunConfig& c) {
  auto [X, Y] = two_sets(c);
  auto S = rc::rc_relative(X, Y, c.max_k);
  Json j = to_json(X, S);
  return {S.status == SeparationStatus::Found ? Exit::Ok : Exit::Undecided, j};
}

inline Outcome emit_milp(const RunConfig& c) {
  auto [X, Y] = two_sets(c);
  if (!c.k) throw InputError("emit-milp: --k is required");
  auto M = emit_sep_milp(X, Y, *c.k);
  Json j{{"d", M.d},           {"k", M.k},
         {"rho", to_string(M.rho)}, {"M", to_string(M.bigM)},
         {"real_vars", M.real_vars}, {"binary_vars", M.binary_vars},
         {"rows", M.rows},       {"lp", M.text}};
  return {Exit::Ok, j};
}

inline Outcome qelim(const RunConfig& c) {
  need_inputs(c, 1, "one formula file");
  BcliFormula F;
  try {
    F = parse_formula(read_file(c.inputs[0]));
  } catch (const ParseError& e) {
    throw InputError(c.inputs[0] + ":" + e.what());
  }
  std::vector<std::string> ints;
  for (const auto& v : F.vars)
    if (v.sort == Sort::Int) ints.push_back(v.name);
  if (c.exists || (!c.z && ints.size() != 1)) {
    auto R = decide_exists(F);
    Json j{{"quantifier", "exists"}, {"valid", R.valid}, {"disjuncts", R.disjuncts}};
    if (R.witness) {
      Json w = Json::object();
      for (std::size_t i = 0; i < F.vars.size(); ++i)
        if (F.vars[i].sort == Sort::Int) w[F.vars[i].name] = to_string((*R.witness)[i]);
      j["witness"] = w;
    }
    return {Exit::Ok, j};
  }
  std::string z = c.z.value_or(ints.empty() ? "z" : ints[0]);
  auto R = decide_forall_z_detail(F, z);
  Json j{{"quantifier", "exists-reals forall " + z},
         {"valid", R.valid},
         {"source_disjuncts", R.source_disjuncts},
         {"cover_disjuncts", R.cover_disjuncts}};
  return {Exit::Ok, j};
}

inline Outcome verify(const RunConfig& c) {
  need_inputs(c, 2, "files X and CERT");
  PointSet X = point_set_from_json(read_json_file(c.inputs[0]));
  HPolyhedron P = certificate_from_json(read_json_file(c.inputs[1]));
  if (P.dim != X.dim()) throw InputError("certificate and point set have different dimensions");
  std::optional<std::pair<Int, Int>> range;
  if (c.box) range = std::make_pair(-*c.box, *c.box);
  Json j{{"rows", P.constraints.size()}};
  try {
    auto V = verify_relaxation(P, X, range);
    j["ok"] = V.ok;
    j["bounded"] = true;
    if (V.witness) j["witness"] = to_json(*V.witness);
    if (range) j["box"] = *c.box;
    return {V.ok ? Exit::Ok : Exit::Undecided, j};
  } catch (const UnboundedError&) {
    j["ok"] = false;
    j["bounded"] = false;
    j["reason"] = "unbounded system; pass --box R to check inside [-R,R]^d";
    return {Exit::Undecided, j};
  }
}

}  // namespace

Outcome run(const RunConfig& c) {
  if (c.threads < 1) throw InputError("--threads must be positive");
  if (c.max_k < 1) throw InputError("--max-k must be positive");
  if (c.asymmetry_constant && c.mode == Mode::Rigorous)
    throw InputError("--asymmetry-constant needs --mode practical");
  if (c.asymmetry_constant && *c.asymmetry_constant < 1) throw InputError("--asymmetry-constant must be positive");
  if (c.box && *c.box < 1) throw InputError("--box must be positive");
  if (c.command == "check-convex") return check_convex(c);
  if (c.command == "width") return width(c);
  if (c.command == "observers") return observers(c);
  if (c.command == "rc") return rc(c);
  if (c.command == "rc-relative") return rc_relative(c);
  if (c.command == "qelim") return qelim(c);
  if (c.command == "emit-milp") return emit_milp(c);
  if (c.command == "verify") return verify(c);
  throw InputError("unknown command '" + c.command + "'");
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace rc::cli
