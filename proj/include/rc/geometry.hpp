#pragma once

#include "rc/fourier_motzkin.hpp"
#include "rc/hnf.hpp"
#include "rc/hull.hpp"
#include "rc/lattice_points.hpp"
#include "rc/lp.hpp"
#include "rc/rational.hpp"
#include "rc/types.hpp"
#include "rc/width.hpp"

namespace rc {

inline bool is_lattice_convex(const PointSet& X) {
  if (X.empty()) throw std::invalid_argument("empty point set");
  return lattice_points(convex_hull(X)) == X;
}

inline bool is_full_dimensional(const PointSet& X) { return affine_dimension(X) == X.dim(); }

// Integer affine map x -> U x + t.
struct AffineMap {
  ZMat U;
  IntVec t;

  int dim() const { return static_cast<int>(U.size()); }

  IntVec operator()(const IntVec& x) const {
    ZVec y = matvec(U, to_z(x));
    IntVec r = to_int(y);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += t[i];
    return r;
  }

  PointSet operator()(const PointSet& X) const {
    std::vector<IntVec> pts;
    for (const auto& x : X) pts.push_back((*this)(x));
    return PointSet(X.dim(), std::move(pts));
  }

  // Image of a·x rel b under x' = U x + t: (a U^{-1})·x' rel b + a U^{-1} t.
  LinearInequality operator()(const LinearInequality& c) const {
    ZMat Ui = unimodular_inverse(U);
    const int d = dim();
    LinearInequality r{QVec(d, Q(0)), c.b, c.rel};
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) r.a[j] += c.a[i] * Q(Ui[i][j]);
    r.b += dot(r.a, t);
    return r;
  }

  HPolyhedron operator()(const HPolyhedron& P) const {
    HPolyhedron R(P.dim);
    for (const auto& c : P.constraints) R.add((*this)(c));
    return R;
  }

  AffineMap inverse() const {
    ZMat Ui = unimodular_inverse(U);
    ZVec mt = matvec(Ui, to_z(t));
    IntVec ti = to_int(mt);
    for (auto& x : ti) x = -x;
    return {Ui, ti};
  }

  AffineMap then(const AffineMap& g) const {  // g ∘ this
    ZMat V = matmul(g.U, U);
    IntVec s = g(t);
    return {V, s};
  }

  static AffineMap identity(int d) { return {identity_z(d), IntVec(d, 0)}; }
};

}  // namespace rc
