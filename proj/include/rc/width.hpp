#pragma once

#include "rc/hull.hpp"
#include "rc/lattice_points.hpp"
#include "rc/types.hpp"

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

namespace rc {

struct WidthDirection {
  IntVec u;
  int dim_plus = 0;   // dim of the face maximizing u·x
  int dim_minus = 0;  // dim of the face minimizing u·x
  std::pair<int, int> face_dims() const {
    return {std::max(dim_plus, dim_minus), std::min(dim_plus, dim_minus)};
  }
};

struct WidthData {
  Int width = 0;
  std::vector<WidthDirection> directions;
};

inline std::pair<Int, Int> extent(const PointSet& X, const IntVec& u) {
  Int lo = dot(u, X[0]), hi = lo;
  for (const auto& x : X) {
    Int v = dot(u, x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

inline Int width_along(const PointSet& X, const IntVec& u) {
  auto [lo, hi] = extent(X, u);
  return hi - lo;
}

// Points of X on the supporting plane u·x = value.
inline PointSet face_points(const PointSet& X, const IntVec& u, Int value) {
  std::vector<IntVec> f;
  for (const auto& x : X)
    if (dot(u, x) == value) f.push_back(x);
  return PointSet(X.dim(), std::move(f));
}

// Integer u with |u·(v - v')| <= w for all vertex pairs.
inline HPolyhedron scaled_difference_polar(const std::vector<IntVec>& verts, int d, Int w) {
  std::set<IntVec> diffs;
  for (const auto& p : verts)
    for (const auto& q : verts)
      if (p != q) diffs.insert(p - q);
  HPolyhedron K(d);
  for (const auto& z : diffs) K.add(make_ineq(z, w));
  return K;
}

inline WidthData lattice_width(const PointSet& X) {
  if (X.empty()) throw std::invalid_argument("lattice width of an empty set");
  const int d = X.dim();
  WidthData W;
  Hull H = hull(X);
  if (H.aff.dim < d) return W;
  Int w0 = width_along(X, unit_vector(d, 0));
  HPolyhedron K = scaled_difference_polar(H.vertices, d, w0);
  std::vector<std::pair<Int, IntVec>> cand;
  for_each_lattice_point(K, [&](const IntVec& u) {
    if (norm_inf(u) == 0) return;
    cand.emplace_back(width_along(X, u), u);
  });
  Int best = w0;
  for (auto& [w, u] : cand) best = std::min(best, w);
  W.width = best;
  for (auto& [w, u] : cand) {
    if (w != best) continue;
    auto [lo, hi] = extent(X, u);
    WidthDirection D;
    D.u = u;
    D.dim_plus = affine_dimension(face_points(X, u, hi));
    D.dim_minus = affine_dimension(face_points(X, u, lo));
    W.directions.push_back(D);
  }
  std::sort(W.directions.begin(), W.directions.end(),
            [](const WidthDirection& a, const WidthDirection& b) { return a.u < b.u; });
  return W;
}

}  // namespace rc
