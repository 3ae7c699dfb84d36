#pragma once

#include "rc/bounds.hpp"
#include "rc/observers.hpp"
#include "rc/qelim.hpp"
#include "rc/separation.hpp"
#include "rc/standard_sets.hpp"

#include <optional>
#include <set>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

namespace rc {

enum class RcStatus { Exact, BoundsOnly, ConjectureDependent };

inline const char* to_string(RcStatus s) {
  switch (s) {
    case RcStatus::Exact: return "Exact";
    case RcStatus::BoundsOnly: return "BoundsOnly";
    case RcStatus::ConjectureDependent: return "ConjectureDependent";
  }
  return "?";
}

enum class WidthCaseTag { NonHollow, Width2Toblerone, Width2Bounded12, Type11, Type20, Type21Parallel, Type21Xab, Type22 };

inline const char* to_string(WidthCaseTag t) {
  switch (t) {
    case WidthCaseTag::NonHollow: return "NonHollow";
    case WidthCaseTag::Width2Toblerone: return "Width>=2-Toblerone";
    case WidthCaseTag::Width2Bounded12: return "Width>=2-Bounded12";
    case WidthCaseTag::Type11: return "Type11";
    case WidthCaseTag::Type20: return "Type20";
    case WidthCaseTag::Type21Parallel: return "Type21-Parallel";
    case WidthCaseTag::Type21Xab: return "Type21-Xab";
    case WidthCaseTag::Type22: return "Type22";
  }
  return "?";
}

enum class Mode { Rigorous, Practical };

struct RcOptions {
  Mode mode = Mode::Rigorous;
  int max_k = 8;
  std::size_t budget = 10000;             // observer search shell candidates
  std::size_t plane_budget = 2000;        // same, for observers off the width planes
  std::optional<Int> asymmetry_constant;  // box mode, practical only
  int refinements = 64;                   // counterexample rounds
  std::size_t box_limit = 200000;         // lattice points scanned in box mode
  std::size_t pool_limit = 48;            // d >= 4: larger observer sets are refined lazily
  int general_refinements = 12;           // d >= 4 counterexample rounds
};

struct RcResult {
  int lower = 0;
  std::string lower_reason;
  std::optional<int> upper;
  std::vector<LinearInequality> certificate;  // relaxation with `upper` rows
  RcStatus status = RcStatus::BoundsOnly;
  std::string route;
  std::optional<WidthCaseTag> case_tag;
  std::vector<std::pair<std::string, std::string>> details;

  void note(std::string k, std::string v) { details.emplace_back(std::move(k), std::move(v)); }
};

namespace detail {

inline void raise_lower(RcResult& R, int v, const std::string& why) {
  if (v > R.lower) {
    R.lower = v;
    R.lower_reason = why;
  }
}

// Lattice point of P outside X, searching growing boxes when P is unbounded.
inline std::optional<IntVec> refute(const PointSet& X, const std::vector<LinearInequality>& rows) {
  HPolyhedron P(X.dim(), rows);
  if (recession_is_trivial(P)) return verify_relaxation(P, X).witness;
  Int reach = 1;
  for (const auto& x : X)
    for (Int c : x) reach = std::max(reach, c < 0 ? -c : c);
  for (Int R = 2 * reach + 2; R <= (Int{1} << 14); R *= 2) {
    auto v = verify_relaxation(P, X, std::make_pair(-R, R));
    if (!v.ok) return v.witness;
  }
  return std::nullopt;
}

inline bool is_relaxation(const PointSet& X, const std::vector<LinearInequality>& rows) {
  HPolyhedron P(X.dim(), rows);
  return recession_is_trivial(P) && verify_relaxation(P, X).ok;
}

// Marks R Exact once the bounds meet on a verified certificate.
inline void settle(RcResult& R, const PointSet& X) {
  if (R.upper && *R.upper == R.lower && is_relaxation(X, R.certificate) &&
      static_cast<int>(R.certificate.size()) == *R.upper)
    R.status = RcStatus::Exact;
}

// conv(X) with each equation of aff(X) widened to a slab of width 1.
inline std::vector<LinearInequality> hull_rows(const PointSet& X) {
  Hull H = hull(X);
  std::vector<LinearInequality> rows = H.facets;
  for (const auto& e : H.aff.equations) {
    rows.push_back({e.a, e.b + make_q(1, 2), Rel::LE});
    QVec n = e.a;
    for (auto& c : n) c = -c;
    rows.push_back({n, -e.b + make_q(1, 2), Rel::LE});
  }
  return rows;
}

// Facets of the convex hull of rational points (full-dimensional).
inline std::vector<LinearInequality> rational_hull_rows(int d, const std::vector<QVec>& verts) {
  Z D = 1;
  for (const auto& v : verts)
    for (const auto& c : v) D = lcm(D, c.get_den());
  std::vector<IntVec> pts;
  for (const auto& v : verts) {
    IntVec p(d);
    for (int i = 0; i < d; ++i) p[i] = to_ll(Q(v[i] * D).get_num());
    pts.push_back(p);
  }
  Hull H = hull(PointSet(d, pts));
  if (H.aff.dim != d) throw std::invalid_argument("points are not affinely independent");
  std::vector<LinearInequality> rows;
  for (const auto& f : H.facets) rows.push_back(normalized({f.a, f.b / Q(D), Rel::LE}));
  return rows;
}

inline std::vector<LinearInequality> map_rows(const AffineMap& f, const std::vector<LinearInequality>& rows) {
  std::vector<LinearInequality> out;
  for (const auto& r : rows) out.push_back(normalized(f(r)));
  return out;
}

inline PointSet drop_last(const PointSet& X) {
  std::vector<IntVec> pts;
  for (auto p : X) {
    p.pop_back();
    pts.push_back(std::move(p));
  }
  return PointSet(X.dim() - 1, std::move(pts));
}

inline IntVec append(IntVec p, Int v) {
  p.push_back(v);
  return p;
}

// x -> U x - h e_d with last row of U equal to the primitive normal c, so c·x = h becomes x_d = 0.
inline AffineMap flatten_map(const IntVec& c, Int h) {
  IntVec t(c.size(), 0);
  t.back() = -h;
  return {unimodular_with_last_row(c), t};
}

inline IntVec int_vector(const QVec& a) {
  IntVec v;
  for (const auto& x : a) {
    if (!is_integer(x)) throw std::invalid_argument("non-integral normal");
    v.push_back(to_ll(x.get_num()));
  }
  return v;
}

// Minimal separation of X from a finite subset of obs(X) and the given lines of observers,
// refined by counterexamples until the system is a relaxation. Every k found is a lower bound.
struct Refinement {
  SeparationStatus status = SeparationStatus::Found;
  int k = 0;
  std::vector<LinearInequality> rows;
  bool verified = false;
  int rounds = 0;
  std::size_t finite_observers = 0;
};

inline Refinement refine(const PointSet& X, PointSet Y0, const std::vector<Line>& lines, const RcOptions& opt) {
  Refinement F;
  for (int round = 0; round < opt.refinements; ++round) {
    F.rounds = round + 1;
    F.finite_observers = Y0.size();
    if (lines.empty()) {
      auto s = rc_relative(X, Y0, opt.max_k);
      F.status = s.status;
      F.k = s.lower;
      if (s.status != SeparationStatus::Found) return F;
      F.rows = s.certificate->system;
    } else {
      auto s = rc_with_parallel_lines(X, make_line_family(lines, Y0), opt.max_k);
      F.status = s.status;
      F.k = s.status == SeparationStatus::KmaxExceeded ? opt.max_k + 1 : s.k;
      if (s.status != SeparationStatus::Found) return F;
      F.rows = s.system;
    }
    auto w = refute(X, F.rows);
    if (!w) {
      F.verified = is_relaxation(X, F.rows);
      return F;
    }
    IntVec o = descend_to_observer(X, *w);
    if (Y0.contains(o)) throw std::logic_error("refinement repeated an observer");
    Y0.insert(o);
  }
  return F;
}

inline void apply_refinement(RcResult& R, const PointSet&, const Refinement& F, const RcOptions& opt) {
  R.note("refinement_rounds", std::to_string(F.rounds));
  R.note("finite_observers", std::to_string(F.finite_observers));
  if (F.status == SeparationStatus::Inseparable) throw std::logic_error("observer not separable from X");
  if (F.status == SeparationStatus::KmaxExceeded) {
    raise_lower(R, opt.max_k + 1, "exceeds max_k");
    return;
  }
  raise_lower(R, F.k, "minimal separation from observers");
  if (F.verified) {
    R.upper = F.k;
    R.certificate = F.rows;
  }
}

inline void hull_upper(RcResult& R, const PointSet& X) {
  auto rows = hull_rows(X);
  if (!R.upper || static_cast<int>(rows.size()) < *R.upper) {
    R.upper = static_cast<int>(rows.size());
    R.certificate = rows;
  }
}

inline RcResult from_observers(const PointSet& X, const ObserverResult& O, const RcOptions& opt, std::string route) {
  RcResult R;
  R.route = std::move(route);
  auto lb = rc_lower_bound(X);
  R.lower = lb.value;
  R.lower_reason = lb.reason;
  R.note("observer_verdict", to_string(O.certificate.verdict));
  R.note("observers", std::to_string(O.observers.size()));
  if (!O.certificate.finite()) {
    apply_refinement(R, X, refine(X, O.observers, {}, opt), opt);
    if (!R.upper) hull_upper(R, X);
    settle(R, X);
    return R;
  }
  auto s = rc_relative(X, O.observers, opt.max_k);
  if (s.status == SeparationStatus::Inseparable) throw std::logic_error("observer not separable from X");
  if (s.status == SeparationStatus::KmaxExceeded) {
    raise_lower(R, opt.max_k + 1, "exceeds max_k");
    hull_upper(R, X);
    return R;
  }
  const auto& C = *s.certificate;
  HPolyhedron P(X.dim(), C.system);
  bool ok = recession_is_trivial(P) ? verify_relaxation(P, X).ok : check_certificate(X, O.observers, C);
  if (!ok) throw std::logic_error("separation of obs(X) is not a relaxation");
  R.lower = C.k;
  R.lower_reason = "minimal separation from obs(X)";
  R.upper = C.k;
  R.certificate = C.system;
  R.status = RcStatus::Exact;
  return R;
}

}  // namespace detail

// rc(X) = rc(X, obs(X)) for X with certified finite obs(X).
inline RcResult rc_via_finite_observers(const PointSet& X, const RcOptions& opt = {}) {
  require_lattice_convex(X);
  ObserverSearch s;
  s.budget = opt.budget;
  auto O = compute_observers(X, s);
  if (!O.certificate.finite()) throw PreconditionError("ObserversNotFinite", "finiteness of obs(X) not certified");
  return detail::from_observers(X, O, opt, "finite-observers");
}

inline RcResult rc_dispatch(const PointSet& X, const RcOptions& opt = {});

namespace detail {

inline RcResult rc_dim1(const PointSet& X) {
  RcResult R;
  R.route = "dim1";
  R.lower = 2;
  R.lower_reason = "one halfline is infinite";
  Int lo = X[0][0], hi = X[X.size() - 1][0];
  R.certificate = {make_ineq({1}, hi), make_ineq({-1}, -lo)};
  R.upper = 2;
  settle(R, X);
  return R;
}

inline RcResult rc_point(const PointSet& X) {
  const int d = X.dim();
  RcResult R;
  R.route = "point";
  R.lower = 2;
  R.lower_reason = "one halfspace is infinite";
  // simplex {x_i - p_i >= -1/(2d), sum (x_i - p_i) <= 1/2}
  const IntVec& p = X[0];
  QVec ones(d, Q(1));
  for (int i = 0; i < d; ++i) {
    QVec a(d, Q(0));
    a[i] = -1;
    R.certificate.push_back({a, -make_q(p[i]) + make_q(1, 2 * d), Rel::LE});
  }
  R.certificate.push_back({ones, dot(ones, p) + make_q(1, 2), Rel::LE});
  R.upper = d + 1;
  if (d >= 2) R.note("irrational_flat", "a hyperplane with Q-independent normal meets Z^d only in X");
  settle(R, X);
  return R;
}

// dim(X) < d: compute in a lattice hyperplane through X and tilt the rows so that higher layers
// are cut, adding one bottom row.
inline RcResult rc_lower_dimensional(const PointSet& X, const RcOptions& opt) {
  const int d = X.dim(), r = affine_dimension(X);
  if (r == 0) return rc_point(X);
  AffineHull A = affine_hull(X);
  const auto& e = A.equations.front();
  IntVec c = int_vector(e.a);
  AffineMap phi = flatten_map(c, to_ll(e.b.get_num()));
  PointSet Xp = drop_last(phi(X));
  RcResult sub = rc_dispatch(Xp, opt);

  RcResult R;
  R.route = "lower-dimensional";
  auto lb = rc_lower_bound(X);
  R.lower = lb.value;
  R.lower_reason = lb.reason;
  if ((d == 2 && r >= 1) || (d == 3 && r >= 2)) raise_lower(R, d + 1, "relaxations are bounded");
  raise_lower(R, sub.lower, "restriction to a lattice hyperplane");
  R.note("hyperplane_rc_lower", std::to_string(sub.lower));
  if (sub.upper) R.note("hyperplane_rc_upper", std::to_string(*sub.upper));

  if (sub.upper && is_relaxation(Xp, sub.certificate)) {
    PointSet Xl = phi(X);
    QVec bottom(d, Q(0));
    bottom.back() = -1;
    for (Int t = 1; t <= (Int{1} << 16); t *= 2) {
      std::vector<LinearInequality> rows;
      for (const auto& s : sub.certificate) {
        QVec a = s.a;
        a.push_back(make_q(t));
        rows.push_back({a, s.b, Rel::LE});
      }
      rows.push_back({bottom, make_q(1, 2), Rel::LE});
      if (is_relaxation(Xl, rows)) {
        R.upper = static_cast<int>(rows.size());
        R.certificate = map_rows(phi.inverse(), rows);
        R.note("tilt", std::to_string(t));
        break;
      }
    }
  }
  if (!R.upper) hull_upper(R, X);
  settle(R, X);
  return R;
}

}  // namespace detail

inline RcResult rc_dim2(const PointSet& X, const RcOptions& opt = {}) {
  if (X.dim() != 2) throw std::invalid_argument("rc_dim2 expects points in Z^2");
  require_lattice_convex(X);
  if (!is_full_dimensional(X)) return detail::rc_lower_dimensional(X, opt);
  ObserverSearch s;
  s.budget = opt.budget;
  return detail::from_observers(X, compute_observers(X, s), opt, "dim2");
}

// ---------------------------------------------------------------- three-dimensional case tree

struct TypedDirection {
  IntVec u;  // oriented so that dim F(X,u) >= dim F(X,-u)
  Int lo = 0, hi = 0;
  int dim_max = 0, dim_min = 0;  // dims of the faces at hi and lo
};

// Width directions up to sign, oriented towards the larger face.
inline std::vector<TypedDirection> typed_directions(const PointSet& X, const WidthData& W) {
  std::vector<TypedDirection> out;
  for (const auto& D : W.directions) {
    IntVec u = D.u;
    int dp = D.dim_plus, dm = D.dim_minus;
    auto first = std::find_if(u.begin(), u.end(), [](Int x) { return x != 0; });
    if (*first < 0) continue;  // represented by -u
    if (dp < dm) {
      for (auto& x : u) x = -x;
      std::swap(dp, dm);
    }
    auto [lo, hi] = extent(X, u);
    out.push_back({u, lo, hi, dp, dm});
  }
  return out;
}

struct XabMatch {
  Int a = 0, b = 0;
  AffineMap map;  // map(X) = X_{a,b}
};

namespace detail {

inline IntVec prim_dir(const IntVec& v) { return primitive_int(v); }

inline bool parallel(const IntVec& p, const IntVec& q) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] * q[j] != p[j] * q[i]) return false;
  return true;
}

// Direction of the one-dimensional face of a type-(2,1) width direction u: the face at lo.
inline IntVec edge_direction(const PointSet& X, const TypedDirection& t) {
  PointSet F = face_points(X, t.u, t.lo);
  return prim_dir(F[F.size() - 1] - F[0]);
}

// Matches X to X_{a,b} with p -> e1, q -> e1+e2, r -> e2 and the rest on a lattice line.
inline std::optional<XabMatch> match_xab(const PointSet& X, const IntVec& p, const IntVec& q, const IntVec& r) {
  IntVec o = p + r - q;
  std::vector<IntVec> rest;
  for (const auto& x : X)
    if (x != p && x != q && x != r) rest.push_back(x);
  if (rest.empty()) return std::nullopt;
  IntVec w;
  for (const auto& x : rest)
    if (x != o) {
      w = prim_dir(x - o);
      break;
    }
  if (w.empty()) return std::nullopt;
  std::vector<Int> ks;
  for (const auto& x : rest) {
    IntVec v = x - o;
    Int k = 0;
    std::size_t i = 0;
    while (i < w.size() && w[i] == 0) ++i;
    k = v[i] / w[i];
    if (k * w != v) return std::nullopt;
    ks.push_back(k);
  }
  std::sort(ks.begin(), ks.end());
  for (std::size_t i = 1; i < ks.size(); ++i)
    if (ks[i] != ks[i - 1] + 1) return std::nullopt;
  Int a = ks.front(), b = ks.back();
  if (a + b < 0) {
    for (auto& x : w) x = -x;
    std::swap(a, b);
    a = -a;
    b = -b;
  }
  ZMat M(3, ZVec(3));
  IntVec c0 = p - o, c1 = r - o;
  for (int i = 0; i < 3; ++i) {
    M[i][0] = static_cast<long>(c0[i]);
    M[i][1] = static_cast<long>(c1[i]);
    M[i][2] = static_cast<long>(w[i]);
  }
  Z det = determinant(M);
  if (det != 1 && det != -1) return std::nullopt;
  AffineMap inv{M, o};
  return XabMatch{a, b, inv.inverse()};
}

}  // namespace detail

// Recognizes X ≅ X_{a,b} (a <= b, a + b >= 0) from two type-(2,1) width directions with
// non-parallel one-dimensional faces.
inline std::optional<XabMatch> detect_X_ab(const PointSet& X) {
  if (X.dim() != 3 || !is_full_dimensional(X)) throw PreconditionError("NotFullDimensional", "expects a full-dimensional set in Z^3");
  WidthData W = lattice_width(X);
  if (W.width != 1) return std::nullopt;
  auto dirs = typed_directions(X, W);
  bool found = false;
  for (std::size_t i = 0; i < dirs.size() && !found; ++i)
    for (std::size_t j = i + 1; j < dirs.size() && !found; ++j) {
      const auto &s = dirs[i], &t = dirs[j];
      if (s.dim_max != 2 || s.dim_min != 1 || t.dim_max != 2 || t.dim_min != 1) continue;
      if (!detail::parallel(detail::edge_direction(X, s), detail::edge_direction(X, t))) found = true;
    }
  if (!found) return std::nullopt;
  std::vector<XabMatch> all;
  for (const auto& p : X)
    for (const auto& q : X)
      for (const auto& r : X) {
        if (p == q || q == r || p == r) continue;
        if (auto m = detail::match_xab(X, p, q, r)) all.push_back(*m);
      }
  if (all.empty()) return std::nullopt;
  auto key = [](const XabMatch& m) {
    AffineMap id = AffineMap::identity(3);
    bool is_id = m.map.U == id.U && m.map.t == id.t;
    return std::make_tuple(!is_id, -m.b, m.a, m.map.U, m.map.t);
  };
  return *std::min_element(all.begin(), all.end(),
                           [&](const XabMatch& x, const XabMatch& y) { return key(x) < key(y); });
}

namespace detail {

inline QVec qv(std::initializer_list<Q> v) { return QVec(v); }

// Four rows cutting out X_{a,b}.
inline std::vector<LinearInequality> xab_tetrahedron(Int a, Int b) {
  PointSet X = X_ab(a, b);
  if (a > b || (a == 0 && b == 0)) throw std::invalid_argument("needs a <= b and {a,b} != {0}");
  if (b <= 0) {
    // reflect x3 -> -x3: X_{a,b} -> X_{-b,-a}
    ZMat R = identity_z(3);
    R[2][2] = -1;
    AffineMap f{R, IntVec(3, 0)};
    return map_rows(f, xab_tetrahedron(-b, -a));
  }
  const Q half = make_q(1, 2);
  if (a == 0) {
    return rational_hull_rows(3, {qv({-half, -half, 0}), qv({make_q(1, 4), make_q(7, 4), 0}),
                                  qv({make_q(7, 4), make_q(1, 4), 0}), qv({0, 0, make_q(b)})});
  }
  if (a == b) return hull(X).facets;
  if (a > 0) {
    Q t = make_q(a) / make_q(3 * b - 2 * a);
    return rational_hull_rows(3, {qv({-1 + 2 * t, 1, 0}), qv({1, -1 + 2 * t, 0}), qv({1, 1, 0}),
                                  qv({-half, -half, make_q(3 * b) / 2})});
  }
  // a < 0 < b: tetrahedron over {0} x [-eps,1] at height a and [-eps,1] x {0} at height b, read
  // in the lattice spanned by two opposite corners of its cross-section at height 0
  const Q ba = make_q(b - a);
  for (int j = 1; j <= 40; ++j) {
    Q eps = make_q(Z(1), pow_z(Z(2), j));
    Q b1x = make_q(-a) / ba, b1y = -make_q(b) * eps / ba;
    Q b2x = make_q(a) * eps / ba, b2y = make_q(b) / ba;
    Q det = b1x * b2y - b2x * b1y;
    auto to_lattice = [&](const Q& x, const Q& y, const Q& z) {
      return qv({(b2y * x - b2x * y) / det, (-b1y * x + b1x * y) / det, z});
    };
    std::vector<QVec> V{to_lattice(0, -eps, make_q(a)), to_lattice(0, 1, make_q(a)), to_lattice(-eps, 0, make_q(b)),
                        to_lattice(1, 0, make_q(b))};
    auto rows = rational_hull_rows(3, V);
    if (is_relaxation(X, rows)) return rows;
  }
  throw std::logic_error("no tetrahedral relaxation of X_{a,b} found");
}

// Rotates the normal of row i by a small angle and keeps the slack at X.
inline std::optional<std::vector<LinearInequality>> rotate_row(const PointSet& X, std::vector<LinearInequality> rows,
                                                               std::size_t i, const Q& delta) {
  auto& r = rows[i];
  Q slack = r.b;
  Q best;
  bool first = true;
  for (const auto& x : X) {
    Q v = dot(r.a, x);
    if (first || v > best) best = v;
    first = false;
  }
  slack -= best;
  QVec a{r.a[0] - delta * r.a[1], r.a[1] + delta * r.a[0]};
  Q m;
  first = true;
  for (const auto& x : X) {
    Q v = dot(a, x);
    if (first || v > m) m = v;
    first = false;
  }
  r = normalized({a, m + slack, Rel::LE});
  if (!is_relaxation(X, rows)) return std::nullopt;
  return rows;
}

inline Q cross2(const QVec& a, const QVec& b) { return a[0] * b[1] - a[1] * b[0]; }

inline bool positively_spanning(const QVec& a, const QVec& b, const QVec& c) {
  Q s1 = cross2(a, b), s2 = cross2(b, c), s3 = cross2(c, a);
  return (s1 > 0 && s2 > 0 && s3 > 0) || (s1 < 0 && s2 < 0 && s3 < 0);
}

// Pyramid over base X' at height 0 with apex (x0, 1), x0 ∈ X'. Rows of the 2D relaxation `base`.
inline std::optional<std::vector<LinearInequality>> pyramid_rows(const PointSet& Xl, const PointSet& Xp,
                                                                 const std::vector<LinearInequality>& base,
                                                                 const IntVec& x0) {
  const QVec down{0, 0, -1};
  auto lift = [](const LinearInequality& r, const Q& t) { return LinearInequality{{r.a[0], r.a[1], t}, r.b, Rel::LE}; };
  auto through_apex = [&](const LinearInequality& r) { return lift(r, r.b - dot(r.a, x0)); };
  const std::size_t m = base.size();
  if (m == 3) {
    std::vector<LinearInequality> rows;
    for (const auto& r : base) rows.push_back(through_apex(r));
    rows.push_back({down, 0, Rel::LE});
    if (is_relaxation(Xl, rows)) return rows;
    return std::nullopt;
  }
  (void)Xp;
  // three rows through the apex, one row tilted below the base, the rest vertical
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        if (!positively_spanning(base[i].a, base[j].a, base[k].a)) continue;
        for (std::size_t l = 0; l < m; ++l) {
          if (l == i || l == j || l == k) continue;
          for (Int M = 1; M <= 1024; M *= 2) {
            std::vector<LinearInequality> rows;
            for (std::size_t s = 0; s < m; ++s) {
              if (s == i || s == j || s == k) rows.push_back(through_apex(base[s]));
              else if (s == l) rows.push_back(lift(base[s], -make_q(M)));
              else rows.push_back(lift(base[s], 0));
            }
            if (is_relaxation(Xl, rows)) return rows;
          }
        }
      }
  return std::nullopt;
}

}  // namespace detail

// Unimodular copies of the toblerone conv{0, 2e1, 2e2} × R containing Y, as {u·x >= α,
// v·x >= β, (u+v)·x <= α+β+2} over directions of Y-width 2 with {u, v} a lattice basis of its span.
inline std::vector<HPolyhedron> toblerones_containing(const PointSet& Y) {
  require_full_dimensional(Y);
  const int d = Y.dim();
  WidthData W = lattice_width(Y);
  if (W.width > 2) throw PreconditionError("WidthAboveTwo", "lattice width exceeds 2");
  Hull H = hull(Y);
  std::vector<IntVec> two;
  for_each_lattice_point(scaled_difference_polar(H.vertices, d, 2), [&](const IntVec& u) {
    if (norm_inf(u) != 0 && width_along(Y, u) == 2) two.push_back(u);
  });
  std::set<IntVec> dirs(two.begin(), two.end());
  std::vector<HPolyhedron> out;
  std::set<std::vector<LinearInequality>> seen;
  for (const auto& u : two)
    for (const auto& v : two) {
      if (!(u < v) || detail::parallel(u, v)) continue;
      if (!dirs.count(u + v) || !hermite_basis_check(u, v)) continue;
      Int a = extent(Y, u).first, b = extent(Y, v).first;
      if (extent(Y, u + v).second > a + b + 2) continue;
      IntVec nu = -1 * u, nv = -1 * v;
      std::vector<LinearInequality> rows{make_ineq(nu, -a), make_ineq(nv, -b), make_ineq(u + v, a + b + 2)};
      std::sort(rows.begin(), rows.end());
      if (seen.insert(rows).second) out.push_back(HPolyhedron(d, rows));
    }
  return out;
}

namespace detail {

struct PlaneFace {
  IntVec u;
  Int h = 0;
  PointSet face;
  int dim = 0;
};

// Observers of X inside supporting lattice planes of width directions, as finite points and lines.
inline void plane_observers(const PointSet&, const std::vector<PlaneFace>& planes, PointSet& Y0,
                            std::vector<Line>& lines, RcResult& R, const RcOptions& opt) {
  for (const auto& pl : planes) {
    AffineMap phi = flatten_map(pl.u, pl.h);
    AffineMap back = phi.inverse();
    PointSet Fp = drop_last(phi(pl.face));
    if (pl.dim == 2) {
      ObserverSearch s;
      s.budget = opt.budget;
      auto O = compute_observers(Fp, s);
      if (!O.certificate.finite()) R.note("plane_observers", "partial");
      for (const auto& y : O.observers) Y0.insert(back(append(y, 0)));
    } else if (pl.dim == 1) {
      IntVec lo = Fp[0], hi = Fp[Fp.size() - 1];
      IntVec w = prim_dir(hi - lo);
      // n with det[w, n] = 1
      Int x, y;
      {
        Int a0 = w[0], b0 = w[1];
        Int old_r = a0, r = b0, old_s = 1, s = 0, old_t = 0, t = 1;
        while (r != 0) {
          Int qq = old_r / r;
          std::tie(old_r, r) = std::make_pair(r, old_r - qq * r);
          std::tie(old_s, s) = std::make_pair(s, old_s - qq * s);
          std::tie(old_t, t) = std::make_pair(t, old_t - qq * t);
        }
        x = old_s;
        y = old_t;
        if (old_r < 0) {
          x = -x;
          y = -y;
        }
      }
      IntVec n{-y, x};  // w0·x + w1·y = 1 gives det[w, (-y, x)] = 1
      Y0.insert(back(append(lo - w, 0)));
      Y0.insert(back(append(hi + w, 0)));
      IntVec dir = back(append(w, 0)) - back(IntVec(3, 0));
      for (Int sgn : {-1, 1}) lines.push_back({back(append(lo + sgn * n, 0)), dir});
    }
  }
}

inline bool on_line(const Line& l, const IntVec& y) { return parallel(y - l.point, l.direction); }

inline std::vector<Line> distinct_lines(const std::vector<Line>& lines) {
  std::vector<Line> out;
  for (const auto& l : lines) {
    bool dup = false;
    for (const auto& m : out) dup = dup || on_line(m, l.point);
    if (!dup) out.push_back(l);
  }
  return out;
}

// Observers in conv(X) + c·(conv(X) - conv(X)) off the given planes, when that body is small.
inline bool box_candidates(const PointSet& X, Int c, const std::vector<PlaneFace>& planes, PointSet& Y0,
                           std::size_t limit) {
  const int d = X.dim();
  Hull H = hull(X);
  std::vector<IntVec> pts;
  for (const auto& v : H.vertices)
    for (const auto& p : H.vertices)
      for (const auto& q : H.vertices) pts.push_back(v + c * (p - q));
  HPolyhedron B = convex_hull(PointSet(d, pts));
  auto bb = integer_bounding_box(B);
  if (!bb || detail::box_volume(*bb) > static_cast<long double>(limit)) return false;
  for_each_lattice_point(B, [&](const IntVec& y) {
    if (X.contains(y)) return;
    for (const auto& pl : planes)
      if (dot(pl.u, y) == pl.h) return;
    if (is_observer(X, y)) Y0.insert(y);
  });
  return true;
}

inline RcResult planes_route(const PointSet& X, const std::vector<TypedDirection>& dirs, RcResult R,
                             const RcOptions& opt) {
  std::vector<PlaneFace> planes;
  for (const auto& t : dirs) {
    planes.push_back({t.u, t.hi, face_points(X, t.u, t.hi), t.dim_max});
    planes.push_back({t.u, t.lo, face_points(X, t.u, t.lo), t.dim_min});
  }
  PointSet Y0(3, std::vector<IntVec>{});
  std::vector<Line> lines;
  plane_observers(X, planes, Y0, lines, R, opt);
  lines = distinct_lines(lines);

  ObserverSearch s;
  s.budget = std::min(opt.budget, opt.plane_budget);
  for (const auto& pl : planes) {
    HPolyhedron H(3);
    H.add(LinearInequality{to_q(pl.u), make_q(pl.h), Rel::EQ});
    s.excluded.push_back(H);
  }
  auto off = observers_finite(X, s);
  R.note("off_plane_verdict", to_string(off.certificate.verdict));
  bool conjectural = false;
  for (const auto& y : off.observers) {
    bool in_plane = false;
    for (const auto& pl : planes) in_plane = in_plane || dot(pl.u, y) == pl.h;
    if (!in_plane) Y0.insert(y);
  }
  if (!off.certificate.finite() && opt.mode == Mode::Practical && opt.asymmetry_constant) {
    conjectural = box_candidates(X, *opt.asymmetry_constant, planes, Y0, opt.box_limit);
    R.note("box_mode", conjectural ? "scanned" : "box too large");
  }
  std::vector<IntVec> keep;
  for (const auto& y : Y0) {
    bool hit = false;
    for (const auto& l : lines) hit = hit || on_line(l, y);
    if (!hit) keep.push_back(y);
  }
  Y0 = PointSet(3, keep);
  R.note("lines", std::to_string(lines.size()));
  R.note("known_finite_observers", std::to_string(Y0.size()));
  // with lines the known observers are only a pool: start from none and add those that
  // counterexamples reach
  auto F = refine(X, lines.empty() ? Y0 : PointSet(3, std::vector<IntVec>{}), lines, opt);
  if (F.verified)
    for (const auto& y : Y0)
      if (HPolyhedron(3, F.rows).contains(y)) throw std::logic_error("relaxation contains an observer");
  apply_refinement(R, X, F, opt);
  if (!R.upper) hull_upper(R, X);
  settle(R, X);
  if (R.status != RcStatus::Exact && conjectural && F.status == SeparationStatus::Found) {
    R.status = RcStatus::ConjectureDependent;
    R.note("conjectural_value", std::to_string(F.k));
  }
  return R;
}

inline RcResult pyramid_route(const PointSet& X, const TypedDirection& t, RcResult R, const RcOptions& opt) {
  // apex on the zero-dimensional face at lo; send it to height 1 and the base to height 0
  IntVec u = -1 * t.u;
  AffineMap phi = flatten_map(u, -t.hi);
  PointSet Y = phi(X);
  IntVec apex;
  std::vector<IntVec> base;
  for (const auto& y : Y) {
    if (y[2] == 1) apex = y;
    else base.push_back(y);
  }
  if (apex.empty() || base.size() + 1 != Y.size()) throw std::logic_error("pyramid normalization failed");
  PointSet Xp = drop_last(PointSet(3, base));
  IntVec x0 = Xp[0];
  // shear (x', z) -> (x' - (apex' - x0) z, z)
  ZMat S = identity_z(3);
  S[0][2] = -static_cast<long>(apex[0] - x0[0]);
  S[1][2] = -static_cast<long>(apex[1] - x0[1]);
  AffineMap sh{S, IntVec(3, 0)};
  AffineMap full = phi.then(sh);
  PointSet Xl = full(X);

  RcResult sub = rc_dim2(Xp, opt);
  R.note("base_rc", sub.upper ? std::to_string(*sub.upper) : "unknown");
  raise_lower(R, sub.lower, "base of the pyramid");
  if (sub.status != RcStatus::Exact) {
    hull_upper(R, X);
    settle(R, X);
    return R;
  }
  const int m = *sub.upper;
  if (m >= 4) raise_lower(R, m, "pyramid over a base with the same rc");
  auto rows = pyramid_rows(Xl, Xp, sub.certificate, x0);
  for (std::size_t i = 0; !rows && m >= 4 && i < sub.certificate.size(); ++i)
    for (const Q& delta : {make_q(1, 16), make_q(-1, 16), make_q(1, 64), make_q(-1, 64)}) {
      auto base2 = rotate_row(Xp, sub.certificate, i, delta);
      if (base2 && (rows = pyramid_rows(Xl, Xp, *base2, x0))) break;
    }
  if (rows) {
    R.upper = static_cast<int>(rows->size());
    R.certificate = map_rows(full.inverse(), *rows);
  } else {
    // base prism with apex cut: m + 1 rows
    std::vector<LinearInequality> r2;
    for (const auto& r : sub.certificate) r2.push_back({{r.a[0], r.a[1], r.b - dot(r.a, x0)}, r.b, Rel::LE});
    r2.push_back({{0, 0, -1}, 0, Rel::LE});
    if (is_relaxation(Xl, r2)) {
      R.upper = static_cast<int>(r2.size());
      R.certificate = map_rows(full.inverse(), r2);
    }
  }
  if (!R.upper) hull_upper(R, X);
  settle(R, X);
  return R;
}

}  // namespace detail

inline RcResult rc_dim3(const PointSet& X, const RcOptions& opt = {}) {
  if (X.dim() != 3) throw std::invalid_argument("rc_dim3 expects points in Z^3");
  require_full_dimensional(X);
  require_lattice_convex(X);
  RcResult R;
  R.route = "dim3";
  auto lb = rc_lower_bound(X);
  R.lower = lb.value;
  R.lower_reason = lb.reason;
  WidthData W = lattice_width(X);
  R.note("width", std::to_string(W.width));

  auto via_observers = [&](WidthCaseTag tag) {
    ObserverSearch s;
    s.budget = opt.budget;
    RcResult r = detail::from_observers(X, compute_observers(X, s), opt, "dim3");
    r.case_tag = tag;
    r.details.insert(r.details.begin(), R.details.begin(), R.details.end());
    return r;
  };
  if (has_interior_lattice_point(X)) return via_observers(WidthCaseTag::NonHollow);
  if (W.width >= 2) {
    bool tob = W.width == 2 && !toblerones_containing(X).empty();
    return via_observers(tob ? WidthCaseTag::Width2Toblerone : WidthCaseTag::Width2Bounded12);
  }

  auto dirs = typed_directions(X, W);
  auto has = [&](int p, int q) {
    for (const auto& t : dirs)
      if (t.dim_max == p && t.dim_min == q) return &t;
    return static_cast<const TypedDirection*>(nullptr);
  };
  if (has(1, 1)) {
    R.case_tag = WidthCaseTag::Type11;
    detail::hull_upper(R, X);
    detail::settle(R, X);
    return R;
  }
  if (const auto* t = has(2, 0)) {
    R.case_tag = WidthCaseTag::Type20;
    return detail::pyramid_route(X, *t, R, opt);
  }
  if (auto m = detect_X_ab(X)) {
    R.case_tag = WidthCaseTag::Type21Xab;
    R.note("a", std::to_string(m->a));
    R.note("b", std::to_string(m->b));
    auto rows = detail::xab_tetrahedron(m->a, m->b);
    R.certificate = detail::map_rows(m->map.inverse(), rows);
    R.upper = static_cast<int>(R.certificate.size());
    detail::settle(R, X);
    return R;
  }
  R.case_tag = has(2, 1) ? WidthCaseTag::Type21Parallel : WidthCaseTag::Type22;
  return detail::planes_route(X, dirs, R, opt);
}

inline RcResult rc_dispatch(const PointSet& X, const RcOptions& opt) {
  if (X.empty()) throw std::invalid_argument("empty point set");
  require_lattice_convex(X);
  const int d = X.dim();
  if (d == 1) return detail::rc_dim1(X);
  if (!is_full_dimensional(X)) return detail::rc_lower_dimensional(X, opt);
  if (d == 2) return rc_dim2(X, opt);
  if (d == 3) return rc_dim3(X, opt);

  RcResult R;
  R.route = "general";
  auto lb = rc_lower_bound(X);
  R.lower = lb.value;
  R.lower_reason = lb.reason;
  detail::hull_upper(R, X);
  detail::settle(R, X);
  if (R.status == RcStatus::Exact) {
    R.note("observers", "not needed: hull meets the lower bound");
    return R;
  }
  ObserverSearch s;
  s.budget = opt.budget;
  auto O = compute_observers(X, s);
  if (O.certificate.finite() && O.observers.size() <= opt.pool_limit)
    return detail::from_observers(X, O, opt, "general");
  R.note("observer_verdict", to_string(O.certificate.verdict));
  R.note("observers_found", std::to_string(O.observers.size()));
  auto wt = width_threshold_check(X);
  for (const auto& [k, v] : wt.parameters) R.note(k, v);
  if (O.observers.size() > 0) {
    // the separation cost grows fast with |Y| above d = 3, so start from nothing
    RcOptions lazy = opt;
    lazy.refinements = opt.general_refinements;
    auto F = detail::refine(X, PointSet(d, std::vector<IntVec>{}), {}, lazy);
    RcResult T = R;
    detail::apply_refinement(T, X, F, opt);
    if (T.upper && *T.upper < *R.upper) {
      R.upper = T.upper;
      R.certificate = T.certificate;
    }
    if (T.lower > R.lower) {
      R.lower = T.lower;
      R.lower_reason = T.lower_reason;
    }
    detail::settle(R, X);
  }
  return R;
}

}  // namespace rc
