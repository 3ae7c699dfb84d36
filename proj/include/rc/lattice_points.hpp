#pragma once

#include "rc/fourier_motzkin.hpp"
#include "rc/lp.hpp"
#include "rc/types.hpp"

#include <functional>
#include <optional>
#include <stdexcept>

namespace rc {

struct UnboundedError : std::runtime_error {
  UnboundedError() : std::runtime_error("polyhedron is unbounded") {}
};

namespace detail {

struct IntRange {
  std::optional<Z> lo, hi;
  bool empty() const { return lo && hi && *lo > *hi; }
};

// Integer range of coordinate i over rows of S with the prefix x[0..i) fixed.
inline IntRange coordinate_range(const HPolyhedron& S, int i, const IntVec& prefix) {
  IntRange r;
  for (const auto& c : S.constraints) {
    const Q& alpha = c.a[i];
    Q rest = c.b;
    for (int j = 0; j < i; ++j)
      if (c.a[j] != 0) rest -= c.a[j] * static_cast<long>(prefix[j]);
    if (alpha == 0) {
      if (!c.holds_value(c.b - rest)) return {Z(1), Z(0)};
      continue;
    }
    Q v = rest / alpha;
    if (c.rel == Rel::EQ) {
      if (!is_integer(v)) return {Z(1), Z(0)};
      Z z = v.get_num();
      if (!r.lo || *r.lo < z) r.lo = z;
      if (!r.hi || *r.hi > z) r.hi = z;
      continue;
    }
    bool strict = c.rel == Rel::LT;
    if (alpha > 0) {
      Z h = strict ? Z(ceil_q(v) - 1) : floor_q(v);
      if (!r.hi || *r.hi > h) r.hi = h;
    } else {
      Z l = strict ? Z(floor_q(v) + 1) : ceil_q(v);
      if (!r.lo || *r.lo < l) r.lo = l;
    }
  }
  return r;
}

}  // namespace detail

// Projections P_i of P onto the first i coordinates, i = 1..d (P_d = P).
inline std::vector<HPolyhedron> projection_chain(const HPolyhedron& P) {
  std::vector<HPolyhedron> chain(P.dim + 1);
  chain[P.dim] = remove_redundant(P);
  for (int i = P.dim - 1; i >= 1; --i) chain[i] = fourier_motzkin(chain[i + 1], i);
  return chain;
}

// Visits the integer points of a bounded P in lexicographic order until f returns false.
// Returns false when stopped early.
inline bool visit_lattice_points(const HPolyhedron& P, const std::function<bool(const IntVec&)>& f) {
  if (!is_feasible(P)) return true;
  if (!recession_is_trivial(P)) throw UnboundedError();
  auto chain = projection_chain(P);
  IntVec x(P.dim, 0);
  std::function<bool(int)> rec = [&](int i) {
    auto range = detail::coordinate_range(chain[i + 1], i, x);
    if (range.empty()) return true;
    if (!range.lo || !range.hi) throw UnboundedError();
    for (Z v = *range.lo; v <= *range.hi; ++v) {
      x[i] = to_ll(v);
      if (!(i + 1 == P.dim ? f(x) : rec(i + 1))) return false;
    }
    return true;
  };
  return rec(0);
}

inline void for_each_lattice_point(const HPolyhedron& P, const std::function<void(const IntVec&)>& f) {
  visit_lattice_points(P, [&](const IntVec& x) {
    f(x);
    return true;
  });
}

// First integer point of P (lexicographic) satisfying pred.
inline std::optional<IntVec> find_lattice_point(const HPolyhedron& P,
                                                const std::function<bool(const IntVec&)>& pred) {
  std::optional<IntVec> hit;
  visit_lattice_points(P, [&](const IntVec& x) {
    if (!pred(x)) return true;
    hit = x;
    return false;
  });
  return hit;
}

inline PointSet lattice_points(const HPolyhedron& P) {
  std::vector<IntVec> pts;
  for_each_lattice_point(P, [&](const IntVec& x) { pts.push_back(x); });
  return PointSet(P.dim, std::move(pts));
}

// Integer bounding box [lo_i, hi_i] of a bounded P.
inline std::optional<std::pair<IntVec, IntVec>> integer_bounding_box(const HPolyhedron& P) {
  if (!is_feasible(P)) return std::nullopt;
  IntVec lo(P.dim), hi(P.dim);
  for (int i = 0; i < P.dim; ++i) {
    QVec e(P.dim, Q(0));
    e[i] = 1;
    auto mx = lp_solve(e, P);
    auto mn = lp_minimize(e, P);
    if (mx.status != LpStatus::Optimal || mn.status != LpStatus::Optimal) throw UnboundedError();
    hi[i] = to_ll(floor_q(mx.value));
    lo[i] = to_ll(ceil_q(mn.value));
  }
  return std::make_pair(lo, hi);
}

}  // namespace rc
