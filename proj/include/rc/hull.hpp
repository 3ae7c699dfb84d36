#pragma once

#include "rc/types.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rc {

namespace detail {

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(std::vector<QVec>& M) {
  std::vector<int> piv;
  if (M.empty()) return piv;
  const int rows = static_cast<int>(M.size()), cols = static_cast<int>(M[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (M[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(M[r], M[p]);
    Q inv = 1 / M[r][c];
    for (auto& x : M[r]) x *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == 0) continue;
      Q f = M[i][c];
      for (int j = 0; j < cols; ++j) M[i][j] -= f * M[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  M.resize(r);
  return piv;
}

inline int rank(std::vector<QVec> M) { return static_cast<int>(rref(M).size()); }

class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t n) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
    return r;
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
    return c;
  }
  void grow(std::size_t n) { w_.resize((n + 63) / 64, 0); }

 private:
  std::vector<std::uint64_t> w_;
};

inline Z zdot(const ZVec& a, const ZVec& b) {
  Z s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Extreme rays of {h : V h >= 0} for V of full column rank (double description).
inline std::vector<ZVec> dd_extreme_rays(const std::vector<ZVec>& V) {
  const std::size_t n = V.size(), k = V[0].size();
  // choose k linearly independent rows
  std::vector<std::size_t> basis_rows;
  {
    std::vector<QVec> acc;
    for (std::size_t i = 0; i < n && basis_rows.size() < k; ++i) {
      auto trial = acc;
      trial.push_back(to_q(V[i]));
      if (rank(trial) > static_cast<int>(acc.size())) {
        acc.push_back(to_q(V[i]));
        basis_rows.push_back(i);
      }
    }
    if (basis_rows.size() < k) throw std::logic_error("dd: rank deficient input");
  }
  // initial rays: columns of B^{-1}
  std::vector<QVec> aug(k, QVec(2 * k, Q(0)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) aug[i][j] = V[basis_rows[i]][j];
    aug[i][k + i] = 1;
  }
  rref(aug);
  struct Ray {
    ZVec h;
    Bits zero;
  };
  std::vector<Ray> rays;
  std::vector<bool> processed(n, false);
  for (std::size_t c = 0; c < k; ++c) {
    QVec col(k);
    for (std::size_t i = 0; i < k; ++i) col[i] = aug[i][k + c];
    rays.push_back({primitive(col), Bits(n)});
  }
  for (auto i : basis_rows) processed[i] = true;
  for (auto& r : rays)
    for (auto i : basis_rows)
      if (zdot(V[i], r.h) == 0) r.zero.set(i);
  auto add_row = [&](std::size_t row) {
    std::vector<std::size_t> pos, neg;
    std::vector<Z> val(rays.size());
    for (std::size_t t = 0; t < rays.size(); ++t) {
      val[t] = zdot(V[row], rays[t].h);
      if (val[t] > 0)
        pos.push_back(t);
      else if (val[t] < 0)
        neg.push_back(t);
    }
    std::vector<Ray> next;
    for (std::size_t t = 0; t < rays.size(); ++t) {
      if (val[t] < 0) continue;
      next.push_back(rays[t]);
      if (val[t] == 0) next.back().zero.set(row);
    }
    for (auto p : pos)
      for (auto q : neg) {
        Bits common = rays[p].zero & rays[q].zero;
        if (common.count() + 2 < k) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t)
          if (t != p && t != q && common.subset_of(rays[t].zero)) adjacent = false;
        if (!adjacent) continue;
        ZVec h(k);
        for (std::size_t j = 0; j < k; ++j) h[j] = val[p] * rays[q].h[j] - val[q] * rays[p].h[j];
        Bits z = common;
        z.set(row);
        next.push_back({primitive(h), z});
      }
    rays = std::move(next);
    processed[row] = true;
  };
  for (std::size_t i = 0; i < n; ++i)
    if (!processed[i]) add_row(i);
  std::vector<ZVec> out;
  for (auto& r : rays) out.push_back(r.h);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

struct AffineHull {
  IntVec origin;
  int dim = -1;
  std::vector<int> coords;                  // coordinates injective on the affine hull
  std::vector<LinearInequality> equations;  // EQ rows pinning the affine hull
};

inline AffineHull affine_hull(const PointSet& X) {
  if (X.empty()) throw std::invalid_argument("affine hull of an empty set");
  const int d = X.dim();
  AffineHull H;
  H.origin = X[0];
  std::vector<QVec> D;
  for (std::size_t i = 1; i < X.size(); ++i) D.push_back(to_q(X[i] - X[0]));
  auto piv = detail::rref(D);
  H.dim = static_cast<int>(piv.size());
  H.coords = piv;
  std::vector<bool> is_piv(d, false);
  for (int p : piv) is_piv[p] = true;
  for (int f = 0; f < d; ++f) {
    if (is_piv[f]) continue;
    QVec n(d, Q(0));
    n[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) n[piv[r]] = -D[r][f];
    ZVec z = primitive(n);
    LinearInequality e{to_q(z), Q(dot(z, H.origin)), Rel::EQ};
    H.equations.push_back(normalized(e));
  }
  std::sort(H.equations.begin(), H.equations.end());
  return H;
}

inline int affine_dimension(const PointSet& X) { return X.empty() ? -1 : affine_hull(X).dim; }

struct Hull {
  AffineHull aff;
  std::vector<LinearInequality> facets;  // a·x <= b, a primitive integer, sorted
  std::vector<IntVec> vertices;
  HPolyhedron polyhedron() const {
    HPolyhedron P(static_cast<int>(aff.origin.size()));
    for (const auto& e : aff.equations) P.add(e);
    for (const auto& f : facets) P.add(f);
    return P;
  }
};

// Facets of conv(X) inside aff(X).
inline Hull hull(const PointSet& X) {
  if (X.empty()) throw std::invalid_argument("convex hull of an empty set");
  Hull H;
  H.aff = affine_hull(X);
  const int d = X.dim(), r = H.aff.dim;
  if (r == 0) {
    H.vertices = {X[0]};
    return H;
  }
  std::vector<ZVec> V;
  for (const auto& p : X) {
    ZVec v(r + 1);
    v[0] = 1;
    for (int j = 0; j < r; ++j) v[j + 1] = static_cast<long>(p[H.aff.coords[j]]);
    V.push_back(v);
  }
  auto rays = detail::dd_extreme_rays(V);
  for (const auto& h : rays) {
    QVec a(d, Q(0));
    for (int j = 0; j < r; ++j) a[H.aff.coords[j]] = -h[j + 1];
    H.facets.push_back(normalized({a, Q(h[0]), Rel::LE}));
  }
  std::sort(H.facets.begin(), H.facets.end());
  for (const auto& p : X) {
    std::vector<QVec> tight;
    for (const auto& f : H.facets)
      if (dot(f.a, p) == f.b) {
        QVec a(r);
        for (int j = 0; j < r; ++j) a[j] = f.a[H.aff.coords[j]];
        tight.push_back(a);
      }
    if (detail::rank(tight) == r) H.vertices.push_back(p);
  }
  return H;
}

inline HPolyhedron convex_hull(const PointSet& X) { return hull(X).polyhedron(); }

}  // namespace rc
