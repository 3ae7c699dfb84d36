#pragma once

#include "rc/types.hpp"

#include <optional>
#include <vector>

namespace rc {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Q value;
  QVec point;
};

namespace detail {

// Dense tableau simplex for: maximize c·y, A y = b, y >= 0, b >= 0.
// Bland's rule for entering and leaving variables.
class Tableau {
 public:
  Tableau(std::size_t cols, std::vector<QVec> A, QVec b, std::vector<int> basis)
      : m_(A.size()), n_(cols), rows_(std::move(A)), rhs_(std::move(b)),
        basis_(std::move(basis)) {}

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  const std::vector<int>& basis() const { return basis_; }

  // Returns false when unbounded.
  bool maximize(const QVec& c, const std::vector<bool>& allowed) {
    set_objective(c);
    for (;;) {
      int enter = -1;
      for (std::size_t j = 0; j < n_; ++j)
        if (allowed[j] && reduced_[j] > 0) {
          enter = static_cast<int>(j);
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Q best;
      for (std::size_t i = 0; i < m_; ++i) {
        const Q& aij = rows_[i][enter];
        if (aij <= 0) continue;
        Q ratio = rhs_[i] / aij;
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(static_cast<std::size_t>(leave), static_cast<std::size_t>(enter));
    }
  }

  Q objective_value() const { return value_; }

  QVec solution() const {
    QVec y(n_, Q(0));
    for (std::size_t i = 0; i < m_; ++i) y[basis_[i]] = rhs_[i];
    return y;
  }

  // Pivot basic columns in `bad` out of the basis when possible; drop rows that cannot be fixed.
  void expel(const std::vector<bool>& bad) {
    for (std::size_t i = 0; i < m_;) {
      if (!bad[basis_[i]]) {
        ++i;
        continue;
      }
      int col = -1;
      for (std::size_t j = 0; j < n_; ++j)
        if (!bad[j] && rows_[i][j] != 0) {
          col = static_cast<int>(j);
          break;
        }
      if (col >= 0) {
        pivot(i, static_cast<std::size_t>(col));
        ++i;
      } else {
        rows_.erase(rows_.begin() + i);
        rhs_.erase(rhs_.begin() + i);
        basis_.erase(basis_.begin() + i);
        --m_;
      }
    }
  }

 private:
  void set_objective(const QVec& c) {
    obj_ = c;
    reduced_ = c;
    value_ = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const Q& cb = c[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (rows_[i][j] != 0) reduced_[j] -= cb * rows_[i][j];
      value_ += cb * rhs_[i];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Q inv = 1 / rows_[r][c];
    for (std::size_t j = 0; j < n_; ++j)
      if (rows_[r][j] != 0) rows_[r][j] *= inv;
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      Q f = rows_[i][c];
      for (std::size_t j = 0; j < n_; ++j)
        if (rows_[r][j] != 0) rows_[i][j] -= f * rows_[r][j];
      rhs_[i] -= f * rhs_[r];
    }
    if (!reduced_.empty() && reduced_[c] != 0) {
      Q f = reduced_[c];
      for (std::size_t j = 0; j < n_; ++j)
        if (rows_[r][j] != 0) reduced_[j] -= f * rows_[r][j];
      value_ += f * rhs_[r];
    }
    basis_[r] = static_cast<int>(c);
  }

  std::size_t m_, n_;
  std::vector<QVec> rows_;
  QVec rhs_;
  std::vector<int> basis_;
  QVec obj_, reduced_;
  Q value_;
};

// Solves max c·x over the closure of P (strictness ignored).
inline LpResult solve_closed(const QVec& c, const HPolyhedron& P) {
  const std::size_t n = P.dim;
  std::vector<const LinearInequality*> rows;
  for (const auto& con : P.constraints) {
    bool zero = std::all_of(con.a.begin(), con.a.end(), [](const Q& x) { return x == 0; });
    if (zero) {
      bool ok = con.rel == Rel::EQ ? con.b == 0 : (con.b >= 0);
      if (!ok) return {LpStatus::Infeasible, Q(0), {}};
      continue;
    }
    rows.push_back(&con);
  }
  const std::size_t m = rows.size();
  // Columns: x+ (n), x- (n), slacks (one per inequality row), artificials.
  std::size_t nslack = 0;
  for (auto* r : rows)
    if (r->rel != Rel::EQ) ++nslack;
  std::vector<int> need_art(m, 0);
  std::size_t nart = 0;
  for (std::size_t i = 0; i < m; ++i) {
    bool ineq = rows[i]->rel != Rel::EQ;
    if (!ineq || rows[i]->b < 0) need_art[i] = 1, ++nart;
  }
  const std::size_t N = 2 * n + nslack + nart;
  std::vector<QVec> A(m, QVec(N, Q(0)));
  QVec b(m);
  std::vector<int> basis(m);
  std::size_t s = 2 * n, a = 2 * n + nslack;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = *rows[i];
    Q sign = (r.b < 0) ? Q(-1) : Q(1);
    for (std::size_t j = 0; j < n; ++j) {
      A[i][j] = sign * r.a[j];
      A[i][n + j] = -sign * r.a[j];
    }
    b[i] = sign * r.b;
    if (r.rel != Rel::EQ) {
      A[i][s] = sign;
      if (!need_art[i]) basis[i] = static_cast<int>(s);
      ++s;
    }
    if (need_art[i]) {
      A[i][a] = 1;
      basis[i] = static_cast<int>(a);
      ++a;
    }
  }
  Tableau T(N, std::move(A), std::move(b), std::move(basis));
  std::vector<bool> all(N, true), art(N, false);
  for (std::size_t j = 2 * n + nslack; j < N; ++j) art[j] = true;
  if (nart > 0) {
    QVec c1(N, Q(0));
    for (std::size_t j = 2 * n + nslack; j < N; ++j) c1[j] = -1;
    T.maximize(c1, all);
    if (T.objective_value() < 0) return {LpStatus::Infeasible, Q(0), {}};
    T.expel(art);
  }
  QVec c2(N, Q(0));
  for (std::size_t j = 0; j < n; ++j) {
    c2[j] = c[j];
    c2[n + j] = -c[j];
  }
  std::vector<bool> allowed(N, true);
  for (std::size_t j = 0; j < N; ++j)
    if (art[j]) allowed[j] = false;
  if (!T.maximize(c2, allowed)) return {LpStatus::Unbounded, Q(0), {}};
  QVec y = T.solution();
  QVec x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = y[j] - y[n + j];
  return {LpStatus::Optimal, dot(c, x), x};
}

inline bool has_strict(const HPolyhedron& P) {
  return std::any_of(P.constraints.begin(), P.constraints.end(),
                     [](const LinearInequality& c) { return c.rel == Rel::LT; });
}

}  // namespace detail

// Point of P (respecting strict rows) or nullopt.
inline std::optional<QVec> feasible_point(const HPolyhedron& P) {
  if (!detail::has_strict(P)) {
    auto r = detail::solve_closed(QVec(P.dim, Q(0)), P);
    if (r.status == LpStatus::Infeasible) return std::nullopt;
    return r.point;
  }
  // max t subject to a·x + t <= b on strict rows, t <= 1.
  HPolyhedron L(P.dim + 1);
  for (const auto& c : P.constraints) {
    LinearInequality e{c.a, c.b, c.rel == Rel::EQ ? Rel::EQ : Rel::LE};
    e.a.push_back(c.rel == Rel::LT ? Q(1) : Q(0));
    L.add(std::move(e));
  }
  QVec t(P.dim + 1, Q(0));
  t[P.dim] = 1;
  L.add({t, Q(1), Rel::LE});
  auto r = detail::solve_closed(t, L);
  if (r.status != LpStatus::Optimal || r.value <= 0) return std::nullopt;
  r.point.pop_back();
  return r.point;
}

inline bool is_feasible(const HPolyhedron& P) { return feasible_point(P).has_value(); }

// Maximizes c·x over P. Strict rows are honoured for feasibility; the value is the supremum over
// the closure.
inline LpResult lp_solve(const QVec& c, const HPolyhedron& P) {
  if (static_cast<int>(c.size()) != P.dim) throw std::invalid_argument("objective has wrong length");
  if (detail::has_strict(P) && !is_feasible(P)) return {LpStatus::Infeasible, Q(0), {}};
  return detail::solve_closed(c, P);
}

inline LpResult lp_minimize(const QVec& c, const HPolyhedron& P) {
  QVec neg = c;
  for (auto& x : neg) x = -x;
  auto r = lp_solve(neg, P);
  if (r.status == LpStatus::Optimal) r.value = -r.value;
  return r;
}

// Recession cone of P is {0}: every coordinate is bounded on {y : a·y <= 0 (=0 for EQ)}.
inline bool recession_is_trivial(const HPolyhedron& P) {
  HPolyhedron C(P.dim);
  for (const auto& c : P.constraints) C.add({c.a, Q(0), c.rel == Rel::EQ ? Rel::EQ : Rel::LE});
  for (int i = 0; i < P.dim; ++i) {
    QVec e(P.dim, Q(0));
    e[i] = 1;
    HPolyhedron B = C;
    for (int j = 0; j < P.dim; ++j) {
      QVec u(P.dim, Q(0));
      u[j] = 1;
      B.add({u, Q(1), Rel::LE});
      u[j] = -1;
      B.add({u, Q(1), Rel::LE});
    }
    for (int s : {1, -1}) {
      e[i] = s;
      auto r = detail::solve_closed(e, B);
      if (r.status == LpStatus::Optimal && r.value > 0) return false;
    }
  }
  return true;
}

}  // namespace rc
