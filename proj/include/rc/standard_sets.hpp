#pragma once

#include "rc/types.hpp"

#include <vector>

namespace rc {

// Integer points of the box [lo, hi] in lexicographic order.
inline PointSet box_points(const IntVec& lo, const IntVec& hi) {
  const int d = static_cast<int>(lo.size());
  std::vector<IntVec> pts;
  IntVec x = lo;
  for (;;) {
    pts.push_back(x);
    int i = d - 1;
    while (i >= 0 && x[i] == hi[i]) {
      x[i] = lo[i];
      --i;
    }
    if (i < 0) break;
    ++x[i];
  }
  return PointSet(d, std::move(pts));
}

inline PointSet cube01(int d) { return box_points(IntVec(d, 0), IntVec(d, 1)); }

// Δ_d = {0, e_1, ..., e_d}
inline PointSet simplex(int d) {
  std::vector<IntVec> pts{IntVec(d, 0)};
  for (int i = 0; i < d; ++i) pts.push_back(unit_vector(d, i));
  return PointSet(d, std::move(pts));
}

// X_{a,b} = {e1, e2, e1+e2} ∪ {k e3 : a <= k <= b}
inline PointSet X_ab(Int a, Int b) {
  std::vector<IntVec> pts{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  for (Int k = a; k <= b; ++k) pts.push_back({0, 0, k});
  return PointSet(3, std::move(pts));
}

}  // namespace rc
