#pragma once

#include "rc/types.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace rc {

using ZMat = std::vector<ZVec>;

inline ZMat identity_z(int n) {
  ZMat I(n, ZVec(n, Z(0)));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

inline ZMat matmul(const ZMat& A, const ZMat& B) {
  const std::size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
  ZMat C(n, ZVec(m, Z(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t)
      if (A[i][t] != 0)
        for (std::size_t j = 0; j < m; ++j) C[i][j] += A[i][t] * B[t][j];
  return C;
}

inline ZVec matvec(const ZMat& A, const ZVec& x) {
  ZVec y(A.size(), Z(0));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
  return y;
}

inline ZVec to_z(const IntVec& v) {
  ZVec z;
  z.reserve(v.size());
  for (Int x : v) z.emplace_back(static_cast<long>(x));
  return z;
}

struct HermiteForm {
  ZMat H;  // U·M
  ZMat U;  // unimodular
  std::vector<int> pivots;
  int rank() const { return static_cast<int>(pivots.size()); }
};

// Row-style Hermite normal form: unimodular row operations bring M to echelon form with
// positive pivots and entries above each pivot reduced into [0, pivot).
inline HermiteForm hermite_normal_form(const ZMat& M) {
  const int rows = static_cast<int>(M.size());
  const int cols = rows ? static_cast<int>(M[0].size()) : 0;
  HermiteForm F{M, identity_z(rows), {}};
  auto& H = F.H;
  auto& U = F.U;
  auto combine = [&](int i, int j, const Z& a, const Z& b, const Z& c, const Z& d) {
    // rows (i, j) <- (a·ri + b·rj, c·ri + d·rj), det = ±1
    for (auto* X : {&H, &U}) {
      auto& R = *X;
      for (std::size_t t = 0; t < R[i].size(); ++t) {
        Z ri = R[i][t], rj = R[j][t];
        R[i][t] = a * ri + b * rj;
        R[j][t] = c * ri + d * rj;
      }
    }
  };
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    for (int i = r + 1; i < rows; ++i) {
      if (H[i][c] == 0) continue;
      Z x = H[r][c], y = H[i][c], g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      combine(r, i, s, t, Z(-y / g), Z(x / g));
    }
    if (H[r][c] == 0) continue;
    if (H[r][c] < 0)
      for (auto* X : {&H, &U})
        for (auto& v : (*X)[r]) v = -v;
    for (int i = 0; i < r; ++i) {
      Z q;
      mpz_fdiv_q(q.get_mpz_t(), H[i][c].get_mpz_t(), H[r][c].get_mpz_t());
      if (q == 0) continue;
      for (auto* X : {&H, &U})
        for (std::size_t t = 0; t < (*X)[i].size(); ++t) (*X)[i][t] -= q * (*X)[r][t];
    }
    F.pivots.push_back(c);
    ++r;
  }
  return F;
}

// Inverse of a unimodular matrix.
inline ZMat unimodular_inverse(const ZMat& U) {
  const int n = static_cast<int>(U.size());
  auto F = hermite_normal_form(U);
  if (F.rank() != n) throw std::invalid_argument("matrix is singular");
  for (int i = 0; i < n; ++i)
    if (F.H[i][i] != 1) throw std::invalid_argument("matrix is not unimodular");
  return F.U;  // F.U·U = I
}

inline Z determinant(const ZMat& A) {
  const int n = static_cast<int>(A.size());
  std::vector<QVec> M(n, QVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M[i][j] = A[i][j];
  Q det = 1;
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (M[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) return Z(0);
    if (p != c) {
      std::swap(M[p], M[c]);
      det = -det;
    }
    det *= M[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (M[i][c] == 0) continue;
      Q f = M[i][c] / M[c][c];
      for (int j = c; j < n; ++j) M[i][j] -= f * M[c][j];
    }
  }
  return det.get_num();
}

// {u, v} is a basis of lin({u,v}) ∩ Z^d: the Hermite form of the d×2 matrix [u v] is [e1 e2].
inline bool hermite_basis_check(const IntVec& u, const IntVec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("vectors differ in length");
  ZMat M(u.size(), ZVec(2));
  for (std::size_t i = 0; i < u.size(); ++i) {
    M[i][0] = static_cast<long>(u[i]);
    M[i][1] = static_cast<long>(v[i]);
  }
  auto F = hermite_normal_form(M);
  if (F.rank() < 2) throw std::invalid_argument("vectors are linearly dependent");
  return F.H[0][0] == 1 && F.H[0][1] == 0 && F.H[1][1] == 1;
}

// Basis of the saturated lattice lin(gens) ∩ Z^d together with a coordinate map.
struct LatticeBasis {
  ZMat basis;   // r vectors of length d
  ZMat coords;  // r×d integer matrix: coordinates of a lattice vector in `basis`
  int rank() const { return static_cast<int>(basis.size()); }
  ZVec coordinates(const IntVec& z) const { return matvec(coords, to_z(z)); }
};

inline LatticeBasis saturated_lattice(const std::vector<IntVec>& gens, int d) {
  ZMat M(d, ZVec(gens.size(), Z(0)));
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (int i = 0; i < d; ++i) M[i][j] = static_cast<long>(gens[j][i]);
  LatticeBasis L;
  if (gens.empty()) return L;
  auto F = hermite_normal_form(M);  // U·M = [H; 0]
  ZMat Uinv = unimodular_inverse(F.U);
  const int r = F.rank();
  for (int k = 0; k < r; ++k) {
    ZVec col(d);
    for (int i = 0; i < d; ++i) col[i] = Uinv[i][k];
    L.basis.push_back(col);
    L.coords.push_back(F.U[k]);
  }
  return L;
}

// Unimodular matrix whose last row is the primitive vector u.
inline ZMat unimodular_with_last_row(const IntVec& u) {
  const int d = static_cast<int>(u.size());
  ZMat col(d, ZVec(1));
  for (int i = 0; i < d; ++i) col[i][0] = static_cast<long>(u[i]);
  auto F = hermite_normal_form(col);  // W·u = g·e1
  if (F.rank() == 0 || F.H[0][0] != 1) throw std::invalid_argument("vector is not primitive");
  ZMat Winv = unimodular_inverse(F.U);  // u = first column of Winv
  // (Winv)^T has first row u; move it last.
  ZMat A(d, ZVec(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) A[i][j] = Winv[j][i];
  std::rotate(A.begin(), A.begin() + 1, A.end());
  return A;
}

}  // namespace rc
