#pragma once

// Independent oracles and generators for the test suites.

#include "rc/geometry.hpp"
#include "rc/standard_sets.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

namespace rc::testing {

using Rng = std::mt19937_64;

// p ∈ conv(S) via the convex-combination LP (no hull computation involved).
inline bool in_conv_lp(const std::vector<IntVec>& S, const IntVec& p) {
  const int n = static_cast<int>(S.size()), d = static_cast<int>(p.size());
  HPolyhedron P(n);
  for (int i = 0; i < n; ++i) {
    QVec a(n, Q(0));
    a[i] = -1;
    P.add({a, Q(0), Rel::LE});
  }
  P.add({QVec(n, Q(1)), Q(1), Rel::EQ});
  for (int j = 0; j < d; ++j) {
    QVec a(n);
    for (int i = 0; i < n; ++i) a[i] = make_q(S[i][j]);
    P.add({a, make_q(p[j]), Rel::EQ});
  }
  return is_feasible(P);
}

inline void for_each_box_point(const IntVec& lo, const IntVec& hi, const std::function<void(const IntVec&)>& f) {
  const int d = static_cast<int>(lo.size());
  IntVec x = lo;
  for (;;) {
    f(x);
    int i = d - 1;
    while (i >= 0 && x[i] == hi[i]) {
      x[i] = lo[i];
      --i;
    }
    if (i < 0) return;
    ++x[i];
  }
}

inline std::pair<IntVec, IntVec> bbox(const std::vector<IntVec>& S) {
  IntVec lo = S[0], hi = S[0];
  for (const auto& s : S)
    for (std::size_t i = 0; i < s.size(); ++i) {
      lo[i] = std::min(lo[i], s[i]);
      hi[i] = std::max(hi[i], s[i]);
    }
  return {lo, hi};
}

inline PointSet brute_lattice_points(const HPolyhedron& P, const IntVec& lo, const IntVec& hi) {
  std::vector<IntVec> out;
  for_each_box_point(lo, hi, [&](const IntVec& x) {
    if (P.contains(x)) out.push_back(x);
  });
  return PointSet(P.dim, out);
}

inline bool brute_lattice_convex(const PointSet& X) {
  auto [lo, hi] = bbox(X.points());
  bool ok = true;
  for_each_box_point(lo, hi, [&](const IntVec& p) {
    if (ok && !X.contains(p) && in_conv_lp(X.points(), p)) ok = false;
  });
  return ok;
}

inline bool brute_is_observer(const PointSet& X, const IntVec& y) {
  if (X.contains(y)) return false;
  return brute_lattice_convex(X.with(y));
}

// All observers of X inside the box [lo, hi].
inline PointSet brute_observers(const PointSet& X, const IntVec& lo, const IntVec& hi) {
  std::vector<IntVec> out;
  for_each_box_point(lo, hi, [&](const IntVec& y) {
    if (!X.contains(y) && brute_is_observer(X, y)) out.push_back(y);
  });
  return PointSet(X.dim(), out);
}

inline Int brute_width(const PointSet& X, Int R) {
  const int d = X.dim();
  Int best = -1;
  for_each_box_point(IntVec(d, -R), IntVec(d, R), [&](const IntVec& u) {
    if (norm_inf(u) == 0) return;
    Int w = width_along(X, u);
    if (best < 0 || w < best) best = w;
  });
  return best;
}

inline ZMat random_unimodular(int d, Rng& rng, int steps = 6) {
  ZMat U = identity_z(d);
  std::uniform_int_distribution<int> idx(0, d - 1), coef(-2, 2), coin(0, 1);
  for (int s = 0; s < steps; ++s) {
    int i = idx(rng), j = idx(rng);
    if (d > 1 && i == j) j = (i + 1) % d;
    if (i == j) {
      for (auto& x : U[i]) x = -x;
      continue;
    }
    if (coin(rng)) {
      std::swap(U[i], U[j]);
    } else {
      int c = coef(rng);
      for (int t = 0; t < d; ++t) U[i][t] += c * U[j][t];
    }
  }
  return U;
}

inline AffineMap random_affine_unimodular(int d, Rng& rng) {
  std::uniform_int_distribution<int> sh(-3, 3);
  IntVec t(d);
  for (auto& x : t) x = sh(rng);
  return {random_unimodular(d, rng), t};
}

// Lattice points of the hull of a few random points in [0, r]^d.
inline PointSet random_lattice_convex(int d, int npts, Int r, Rng& rng) {
  std::uniform_int_distribution<Int> c(0, r);
  std::vector<IntVec> seed;
  for (int i = 0; i < npts; ++i) {
    IntVec p(d);
    for (auto& x : p) x = c(rng);
    seed.push_back(p);
  }
  return lattice_points(convex_hull(PointSet(d, seed)));
}

// conv(A) ∩ conv(B) = ∅, via the joint convex-combination LP.
inline bool hulls_disjoint(const PointSet& A, const PointSet& B) {
  const int na = static_cast<int>(A.size()), nb = static_cast<int>(B.size()), d = A.dim();
  const int n = na + nb;
  HPolyhedron P(n);
  for (int i = 0; i < n; ++i) {
    QVec a(n, Q(0));
    a[i] = -1;
    P.add({a, Q(0), Rel::LE});
  }
  QVec sa(n, Q(0)), sb(n, Q(0));
  for (int i = 0; i < na; ++i) sa[i] = 1;
  for (int i = 0; i < nb; ++i) sb[na + i] = 1;
  P.add({sa, Q(1), Rel::EQ});
  P.add({sb, Q(1), Rel::EQ});
  for (int j = 0; j < d; ++j) {
    QVec a(n);
    for (int i = 0; i < na; ++i) a[i] = make_q(A[i][j]);
    for (int i = 0; i < nb; ++i) a[na + i] = make_q(-B[i][j]);
    P.add({a, Q(0), Rel::EQ});
  }
  return !is_feasible(P);
}

// Least k <= k_max such that Y splits into k groups each hull-disjoint from X; k_max + 1 if none.
inline int brute_rc_relative(const PointSet& X, const PointSet& Y, int k_max) {
  const std::size_t n = Y.size();
  if (n == 0) return 0;
  for (int k = 1; k <= k_max; ++k) {
    std::vector<int> g(n, 0);
    for (;;) {
      bool ok = true;
      for (int c = 0; c < k && ok; ++c) {
        std::vector<IntVec> pts;
        for (std::size_t i = 0; i < n; ++i)
          if (g[i] == c) pts.push_back(Y[i]);
        if (!pts.empty()) ok = hulls_disjoint(X, PointSet(X.dim(), pts));
      }
      if (ok) return k;
      std::size_t i = 0;
      while (i < n && g[i] == k - 1) g[i++] = 0;
      if (i == n) break;
      ++g[i];
    }
  }
  return k_max + 1;
}

// Lattice-convex X with |X| <= 5 and Y of up to 6 points outside X, in dimension 1 or 2.
inline std::pair<PointSet, PointSet> random_separation_instance(Rng& rng) {
  std::uniform_int_distribution<int> dd(1, 2), ny(1, 6);
  const int d = dd(rng);
  PointSet X(d);
  do {
    X = random_lattice_convex(d, 3, d == 1 ? 4 : 2, rng);
  } while (X.size() > 5);
  std::uniform_int_distribution<Int> c(-2, 3);
  std::vector<IntVec> Y;
  const int want = ny(rng);
  for (int tries = 0; static_cast<int>(Y.size()) < want && tries < 200; ++tries) {
    IntVec p(d);
    for (auto& x : p) x = c(rng);
    if (!X.contains(p) && std::find(Y.begin(), Y.end(), p) == Y.end()) Y.push_back(p);
  }
  return {X, PointSet(d, Y)};
}

}  // namespace rc::testing
