#pragma once

#include "rc/geometry.hpp"
#include "rc/ilp.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rc {

// A precondition of an operation failed; `condition` names it (e.g. "NotParityComplete").
struct PreconditionError : std::invalid_argument {
  std::string condition;
  PreconditionError(std::string cond, const std::string& what)
      : std::invalid_argument(what), condition(std::move(cond)) {}
};

inline void require_full_dimensional(const PointSet& X) {
  if (X.empty() || !is_full_dimensional(X))
    throw PreconditionError("NotFullDimensional", "point set is not full-dimensional");
}

inline void require_lattice_convex(const PointSet& X) {
  if (!is_lattice_convex(X)) throw PreconditionError("NotLatticeConvex", "point set is not lattice-convex");
}

// Row a·x <= b (or = b) with integer data, for fast membership tests.
struct IntRow {
  IntVec a;
  Int b = 0;
  bool eq = false;
  bool holds(const IntVec& x) const {
    Int v = dot(a, x);
    return eq ? v == b : v <= b;
  }
};

inline std::vector<IntRow> integer_rows(const HPolyhedron& P) {
  std::vector<IntRow> rows;
  for (const auto& c0 : P.constraints) {
    auto c = tighten_integral(c0);
    if (!c) throw std::invalid_argument("row has no integer solutions");
    IntRow r;
    for (const auto& x : c->a) r.a.push_back(to_ll(x.get_num()));
    r.b = to_ll(c->b.get_num());
    r.eq = c->rel == Rel::EQ;
    rows.push_back(std::move(r));
  }
  return rows;
}

inline bool all_hold(const std::vector<IntRow>& rows, const IntVec& x) {
  for (const auto& r : rows)
    if (!r.holds(x)) return false;
  return true;
}

// Visits the lattice points of conv(S) until f returns false; small hulls are scanned over their
// bounding box.
inline bool visit_hull_lattice_points(const PointSet& S, const std::function<bool(const IntVec&)>& f) {
  Hull H = hull(S);
  HPolyhedron P = H.polyhedron();
  const int d = S.dim();
  IntVec lo = S[0], hi = S[0];
  for (const auto& p : S)
    for (int i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  long double vol = 1;
  for (int i = 0; i < d; ++i) vol *= static_cast<long double>(hi[i] - lo[i] + 1);
  if (vol > 20000) return visit_lattice_points(P, f);
  auto rows = integer_rows(P);
  IntVec x = lo;
  for (;;) {
    if (all_hold(rows, x) && !f(x)) return false;
    int i = d - 1;
    while (i >= 0 && x[i] == hi[i]) {
      x[i] = lo[i];
      --i;
    }
    if (i < 0) return true;
    ++x[i];
  }
}

// First lattice point of conv(X ∪ {q}) outside X ∪ {q}.
inline std::optional<IntVec> extra_lattice_point(const PointSet& X, const IntVec& q) {
  PointSet S = X.with(q);
  std::optional<IntVec> hit;
  visit_hull_lattice_points(S, [&](const IntVec& p) {
    if (S.contains(p)) return true;
    hit = p;
    return false;
  });
  return hit;
}

inline bool is_observer(const PointSet& X, const IntVec& y) {
  if (X.contains(y)) throw std::invalid_argument("point belongs to X");
  return !extra_lattice_point(X, y).has_value();
}

// Follows lattice points inside conv(X ∪ {q}) until an observer is reached; q lies in the cone of
// the returned observer.
inline IntVec descend_to_observer(const PointSet& X, IntVec q) {
  while (auto p = extra_lattice_point(X, q)) q = *p;
  return q;
}

// Residues of aff(X) ∩ Z^d modulo 2 all occur in X.
inline bool is_parity_complete(const PointSet& X) {
  if (X.empty()) throw std::invalid_argument("empty point set");
  std::vector<IntVec> diffs;
  for (const auto& x : X) diffs.push_back(x - X[0]);
  auto L = saturated_lattice(diffs, X.dim());
  const int r = L.rank();
  std::vector<ZVec> seen;
  for (const auto& x : X) {
    ZVec c = L.coordinates(x - X[0]);
    for (auto& v : c) v = ((v % 2) + 2) % 2;
    seen.push_back(c);
  }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  return seen.size() == (std::size_t{1} << r);
}

// {s·x − (s−1)·y : x, y ∈ X}; s = 2 gives 2X − X.
inline PointSet difference_body(const PointSet& X, Int scale) {
  std::vector<IntVec> pts;
  for (const auto& x : X)
    for (const auto& y : X) pts.push_back(scale * x - (scale - 1) * y);
  return PointSet(X.dim(), std::move(pts));
}

// obs(X) for parity-complete X, filtered from 2X − X.
inline PointSet observers_parity(const PointSet& X) {
  require_full_dimensional(X);
  require_lattice_convex(X);
  if (!is_parity_complete(X)) throw PreconditionError("NotParityComplete", "point set is not parity-complete");
  std::vector<IntVec> out;
  for (const auto& y : difference_body(X, 2))
    if (!X.contains(y) && is_observer(X, y)) out.push_back(y);
  return PointSet(X.dim(), std::move(out));
}

inline bool has_interior_lattice_point(const PointSet& X) {
  require_full_dimensional(X);
  Hull H = hull(X);
  std::vector<IntRow> strict;
  for (const auto& f : H.facets) {
    IntRow r = integer_rows(HPolyhedron(X.dim(), {f}))[0];
    r.b -= 1;
    strict.push_back(r);
  }
  bool found = false;
  visit_hull_lattice_points(X, [&](const IntVec& p) {
    found = all_hold(strict, p);
    return !found;
  });
  return found;
}

// C_q = q + cone{q − x : x ∈ X}
struct Cone {
  IntVec apex;
  HPolyhedron constraints;
  std::vector<IntRow> rows;
  bool contains(const IntVec& y) const { return all_hold(rows, y); }
};

inline Cone observer_cone(const PointSet& X, const IntVec& q) {
  std::vector<IntVec> pts{q};
  for (const auto& x : X) pts.push_back(2 * q - x);
  Hull H = hull(PointSet(X.dim(), pts));
  Cone C{q, HPolyhedron(X.dim()), {}};
  for (const auto& e : H.aff.equations) C.constraints.add(e);
  for (const auto& f : H.facets)
    if (dot(f.a, q) == f.b) C.constraints.add(f);
  C.rows = integer_rows(C.constraints);
  return C;
}

// X together with apex cones and further excluded regions whose lattice points count as covered.
struct SemiLinearSet {
  PointSet base;
  std::vector<Cone> cones;
  std::vector<HPolyhedron> excluded;

  int dim() const { return base.dim(); }
  bool contains(const IntVec& y) const {
    if (base.contains(y)) return true;
    for (const auto& c : cones)
      if (c.contains(y)) return true;
    for (const auto& e : excluded)
      if (e.contains(y)) return true;
    return false;
  }
};

struct ComplementPiece {
  HPolyhedron region;
  bool bounded = false;
  PointSet points;  // lattice points minus base, bounded pieces only
};

namespace detail {

// Rows of a region as a list of LE/LT conditions (EQ split in two).
inline std::vector<LinearInequality> split_rows(const HPolyhedron& P) {
  std::vector<LinearInequality> out;
  for (const auto& c : P.constraints) {
    if (c.rel != Rel::EQ) {
      out.push_back(c);
      continue;
    }
    out.push_back({c.a, c.b, Rel::LE});
    QVec n = c.a;
    for (auto& x : n) x = -x;
    out.push_back({n, -c.b, Rel::LE});
  }
  return out;
}

// Negation of a row. With `integral`, the row has integer data and only lattice points matter,
// so a·x > b becomes a·x >= b + 1.
inline LinearInequality negate(const LinearInequality& c, bool integral) {
  QVec n = c.a;
  for (auto& x : n) x = -x;
  if (integral) {
    auto t = tighten_integral(c);
    QVec m = t->a;
    for (auto& x : m) x = -x;
    return {m, -t->b - 1, Rel::LE};
  }
  return {n, -c.b, c.rel == Rel::LT ? Rel::LE : Rel::LT};
}

using Families = std::vector<std::vector<LinearInequality>>;

inline Families negation_families(const SemiLinearSet& S) {
  Families F;
  for (const auto& c : S.cones) F.push_back(split_rows(c.constraints));
  for (const auto& e : S.excluded) F.push_back(split_rows(e));
  return F;
}

}  // namespace detail

// Complement of the cones and excluded regions as disjoint polyhedra with strict rows. Only
// lattice points matter, so feasibility and boundedness of a piece are judged on its integer
// tightening (a·x > b read as a·x >= b + 1).
inline std::vector<ComplementPiece> complement_pieces(const SemiLinearSet& S,
                                                      const std::optional<HPolyhedron>& domain = std::nullopt) {
  std::vector<ComplementPiece> out;
  const int d = S.dim();
  HPolyhedron start = domain ? *domain : HPolyhedron(d);
  auto F = detail::negation_families(S);
  std::function<void(const HPolyhedron&, const HPolyhedron&, std::size_t)> rec =
      [&](const HPolyhedron& strict, const HPolyhedron& tight, std::size_t idx) {
        if (idx == F.size()) {
          ComplementPiece piece{strict, recession_is_trivial(tight), PointSet(d)};
          if (piece.bounded) piece.points = lattice_points(tight).minus(S.base);
          out.push_back(std::move(piece));
          return;
        }
        HPolyhedron meet = tight;
        for (const auto& r : F[idx]) meet.add(r);
        if (!is_feasible(meet)) return rec(strict, tight, idx + 1);
        HPolyhedron ps = strict, pt = tight;
        for (const auto& r : F[idx]) {
          HPolyhedron cs = ps, ct = pt;
          cs.add(detail::negate(r, false));
          ct.add(detail::negate(r, true));
          if (is_feasible(ct)) rec(cs, ct, idx + 1);
          ps.add(r);
          pt.add(r);
        }
      };
  rec(start, start, 0);
  return out;
}

namespace detail {

inline long double box_volume(const std::pair<IntVec, IntVec>& b) {
  long double v = 1;
  for (std::size_t i = 0; i < b.first.size(); ++i) v *= static_cast<long double>(b.second[i] - b.first[i] + 1);
  return v;
}

}  // namespace detail

// Lattice point of the domain outside S, or nullopt. Complete: bounded cells are enumerated, the
// remaining unbounded cells are decided by integer feasibility against each facet of conv(base).
inline std::optional<IntVec> find_uncovered(const SemiLinearSet& S, const std::vector<HPolyhedron>& domains) {
  const int d = S.dim();
  auto outside_base = detail::split_rows(convex_hull(S.base));
  auto F = detail::negation_families(S);
  std::optional<IntVec> witness;
  std::function<bool(const HPolyhedron&, std::size_t)> rec = [&](const HPolyhedron& P, std::size_t idx) {
    if (recession_is_trivial(P)) {
      auto bb = integer_bounding_box(P);
      if (!bb) return true;
      if (detail::box_volume(*bb) <= 4000 || idx == F.size()) {
        visit_lattice_points(P, [&](const IntVec& y) {
          if (S.contains(y)) return true;
          witness = y;
          return false;
        });
        return !witness;
      }
    }
    if (idx == F.size()) {
      for (const auto& f : outside_base) {
        HPolyhedron Q = P;
        Q.add(detail::negate(f, true));
        if (auto y = ilp_feasible(Q)) {
          witness = *y;
          return false;
        }
      }
      return true;
    }
    HPolyhedron meet = P;
    for (const auto& r : F[idx]) meet.add(r);
    if (!is_feasible(meet)) return rec(P, idx + 1);
    HPolyhedron prefix = P;
    for (const auto& r : F[idx]) {
      HPolyhedron cell = prefix;
      cell.add(detail::negate(r, true));
      if (is_feasible(cell) && !rec(cell, idx + 1)) return false;
      prefix.add(r);
    }
    return true;
  };
  std::vector<HPolyhedron> starts = domains;
  if (starts.empty()) starts.push_back(HPolyhedron(d));
  for (const auto& D : starts)
    if (!rec(D, 0)) break;
  return witness;
}

enum class Verdict { ParityComplete, NonHollow, WidthAboveThreshold, GeneralTerminated, Unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::ParityComplete: return "ParityComplete";
    case Verdict::NonHollow: return "NonHollow";
    case Verdict::WidthAboveThreshold: return "WidthAboveThreshold";
    case Verdict::GeneralTerminated: return "GeneralTerminated";
    case Verdict::Unknown: return "Unknown";
  }
  return "?";
}

struct FinitenessCertificate {
  Verdict verdict = Verdict::Unknown;
  std::vector<std::pair<std::string, std::string>> parameters;
  bool finite() const { return verdict != Verdict::Unknown; }
};

struct ObserverResult {
  PointSet observers;
  FinitenessCertificate certificate;
};

struct ObserverSearch {
  std::size_t budget = 10000;          // shell candidates examined
  std::vector<HPolyhedron> excluded;   // lattice points treated as decided
  std::vector<HPolyhedron> domain;     // union restricting the search; empty means Z^d
};

// Coordinate-wise (lower) median.
inline IntVec median_point(const PointSet& X) {
  IntVec c(X.dim());
  for (int i = 0; i < X.dim(); ++i) {
    std::vector<Int> v;
    for (const auto& x : X) v.push_back(x[i]);
    std::sort(v.begin(), v.end());
    c[i] = v[(v.size() - 1) / 2];
  }
  return c;
}

// Calls f on the points at ∞-distance exactly r from c, lexicographically, until f returns false.
inline bool for_each_shell_point(const IntVec& c, Int r, const std::function<bool(const IntVec&)>& f) {
  const int d = static_cast<int>(c.size());
  IntVec x(d);
  std::function<bool(int, bool)> rec = [&](int i, bool on_boundary) {
    if (i == d) return on_boundary ? f(x) : true;
    if (!on_boundary && i == d - 1) {
      for (Int v : {c[i] - r, c[i] + r}) {
        x[i] = v;
        if (!f(x)) return false;
        if (r == 0) break;
      }
      return true;
    }
    for (Int v = c[i] - r; v <= c[i] + r; ++v) {
      x[i] = v;
      if (!rec(i + 1, on_boundary || v == c[i] - r || v == c[i] + r)) return false;
    }
    return true;
  };
  return rec(0, false);
}

// Observers of X by shell search with cone covering; the loop ends once the
// complement of X ∪ cones (∪ excluded) has no lattice point in the domain.
inline ObserverResult observers_finite(const PointSet& X, const ObserverSearch& opt = {}) {
  require_full_dimensional(X);
  require_lattice_convex(X);
  SemiLinearSet S{X, {}, opt.excluded};
  std::vector<IntVec> found;
  auto in_domain = [&](const IntVec& y) {
    if (opt.domain.empty()) return true;
    for (const auto& D : opt.domain)
      if (D.contains(y)) return true;
    return false;
  };
  auto adjoin = [&](const IntVec& q) {
    IntVec o = descend_to_observer(X, q);
    found.push_back(o);
    S.cones.push_back(observer_cone(X, o));
  };
  const IntVec c = median_point(X);
  std::size_t used = 0;
  bool exhausted = false;
  std::size_t checks = 0;
  for (Int r = 0; !exhausted; ++r) {
    const std::size_t before = found.size();
    for_each_shell_point(c, r, [&](const IntVec& q) {
      if (!in_domain(q)) return true;
      if (++used > opt.budget) {
        exhausted = true;
        return false;
      }
      if (!S.contains(q)) adjoin(q);
      return true;
    });
    if (exhausted || found.size() != before) continue;
    ++checks;
    auto w = find_uncovered(S, opt.domain);
    if (!w) {
      FinitenessCertificate cert{Verdict::GeneralTerminated,
                                 {{"shell_radius", std::to_string(r)},
                                  {"candidates", std::to_string(used)},
                                  {"cones", std::to_string(S.cones.size())},
                                  {"complement_checks", std::to_string(checks)}}};
      return {PointSet(X.dim(), found), cert};
    }
    if (++used > opt.budget) break;
    adjoin(*w);
  }
  FinitenessCertificate cert{Verdict::Unknown,
                             {{"reason", "budget exhausted"}, {"budget", std::to_string(opt.budget)}}};
  return {PointSet(X.dim(), found), cert};
}

// Known values w∞(1..4) = 0, 0, 1, 2.
inline std::optional<Int> finiteness_threshold_width(int d) {
  static const Int table[] = {0, 0, 1, 2};
  if (d < 1 || d > 4) return std::nullopt;
  return table[d - 1];
}

inline FinitenessCertificate width_threshold_check(const PointSet& X) {
  require_full_dimensional(X);
  const int d = X.dim();
  auto t = finiteness_threshold_width(d);
  if (!t) return {Verdict::Unknown, {{"reason", "threshold width unknown for d >= 5"}}};
  Int w = lattice_width(X).width;
  std::vector<std::pair<std::string, std::string>> params{{"width", std::to_string(w)},
                                                          {"threshold", std::to_string(*t)}};
  if (w > *t) return {Verdict::WidthAboveThreshold, params};
  return {Verdict::Unknown, params};
}

// obs(X) through the strongest applicable route: parity completeness, else the shell search. The
// certificate records which finiteness condition holds.
inline ObserverResult compute_observers(const PointSet& X, const ObserverSearch& opt = {}) {
  require_full_dimensional(X);
  require_lattice_convex(X);
  if (is_parity_complete(X)) return {observers_parity(X), {Verdict::ParityComplete, {}}};
  ObserverResult r = observers_finite(X, opt);
  if (!r.certificate.finite()) return r;
  if (has_interior_lattice_point(X))
    r.certificate.parameters.insert(r.certificate.parameters.begin(), {"non_hollow", "true"});
  auto wt = width_threshold_check(X);
  if (wt.verdict == Verdict::WidthAboveThreshold)
    r.certificate.parameters.insert(r.certificate.parameters.begin(), {"width_above_threshold", "true"});
  return r;
}

}  // namespace rc
