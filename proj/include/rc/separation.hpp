#pragma once

#include "rc/lattice_points.hpp"
#include "rc/lp.hpp"
#include "rc/types.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rc {

// Some a·x <= b with a·x <= b on X and a·y >= b + 1 on G, or nullopt.
inline std::optional<LinearInequality> separable_one(const PointSet& X, const PointSet& G) {
  if (X.dim() != G.dim()) throw std::invalid_argument("dimension mismatch");
  if (!X.disjoint(G)) throw std::invalid_argument("X and G overlap");
  const int d = X.dim();
  if (G.empty()) return LinearInequality{QVec(d, Q(0)), Q(0), Rel::LE};
  // unknowns (a, b)
  HPolyhedron P(d + 1);
  auto row = [&](const IntVec& p, Q sign, Q rhs) {
    QVec r(d + 1);
    for (int j = 0; j < d; ++j) r[j] = sign * make_q(p[j]);
    r[d] = -sign;
    P.add({std::move(r), rhs, Rel::LE});
  };
  for (const auto& x : X) row(x, Q(1), Q(0));
  for (const auto& y : G) row(y, Q(-1), Q(-1));
  auto s = feasible_point(P);
  if (!s) return std::nullopt;
  LinearInequality c{QVec(s->begin(), s->begin() + d), (*s)[d], Rel::LE};
  return normalized(c);
}

struct SeparationCertificate {
  int k = 0;
  std::vector<LinearInequality> system;
  std::vector<std::pair<IntVec, int>> assignment;  // y -> index of a violated row
};

// Independent check of the two defining conditions.
inline bool check_certificate(const PointSet& X, const PointSet& Y, const SeparationCertificate& C) {
  if (static_cast<int>(C.system.size()) != C.k) return false;
  for (const auto& x : X)
    for (const auto& r : C.system)
      if (!r.holds(x)) return false;
  if (C.assignment.size() != Y.size()) return false;
  for (const auto& [y, i] : C.assignment) {
    if (!Y.contains(y) || i < 0 || i >= C.k) return false;
    if (C.system[i].holds(y)) return false;
  }
  return true;
}

enum class SeparationStatus { Found, KmaxExceeded, Inseparable };

inline const char* to_string(SeparationStatus s) {
  switch (s) {
    case SeparationStatus::Found: return "Found";
    case SeparationStatus::KmaxExceeded: return "KmaxExceeded";
    case SeparationStatus::Inseparable: return "Inseparable";
  }
  return "?";
}

struct SeparationResult {
  SeparationStatus status = SeparationStatus::Found;
  int lower = 0;  // proven lower bound on k
  std::optional<SeparationCertificate> certificate;
};

namespace detail {

// Backtracking over assignments of Y to k groups with memoized group LPs.
class GroupSearch {
 public:
  GroupSearch(const PointSet& X, const PointSet& Y) : X_(X), Y_(Y), n_(Y.size()) {
    conflict_.assign(n_, std::vector<bool>(n_, false));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (!feasible({i, j})) conflict_[i][j] = conflict_[j][i] = true;
  }

  bool point_separable(std::size_t i) { return feasible({i}); }

  // Size of a greedy clique in the conflict graph, a lower bound on k.
  int clique_bound() const {
    std::vector<std::size_t> order(n_);
    for (std::size_t i = 0; i < n_; ++i) order[i] = i;
    std::vector<std::size_t> deg(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) deg[i] += conflict_[i][j];
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return deg[a] > deg[b]; });
    int best = n_ ? 1 : 0;
    for (std::size_t s = 0; s < n_; ++s) {
      std::vector<std::size_t> C{order[s]};
      for (std::size_t t : order) {
        bool ok = t != order[s];
        for (std::size_t c : C) ok = ok && conflict_[c][t];
        if (ok) C.push_back(t);
      }
      best = std::max(best, static_cast<int>(C.size()));
    }
    return best;
  }

  // Completion of the partial assignment (-1 = free) into k groups, or nullopt.
  std::optional<std::vector<int>> complete(std::vector<int> assign, int k) {
    std::vector<std::vector<std::size_t>> groups(k);
    for (std::size_t i = 0; i < n_; ++i)
      if (assign[i] >= 0) groups[assign[i]].push_back(i);
    for (auto& g : groups) {
      std::sort(g.begin(), g.end());
      if (!feasible(g)) return std::nullopt;
    }
    if (rec(assign, groups, k)) return assign;
    return std::nullopt;
  }

  bool feasible(std::vector<std::size_t> g) {
    if (g.empty()) return true;
    std::sort(g.begin(), g.end());
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = a + 1; b < g.size(); ++b)
        if (conflict_[g[a]][g[b]]) return false;
    auto it = memo_.find(g);
    if (it != memo_.end()) return it->second;
    std::vector<IntVec> pts;
    for (auto i : g) pts.push_back(Y_[i]);
    bool ok = separable_one(X_, PointSet(X_.dim(), pts)).has_value();
    memo_.emplace(std::move(g), ok);
    return ok;
  }

  std::optional<LinearInequality> witness(const std::vector<std::size_t>& g) {
    std::vector<IntVec> pts;
    for (auto i : g) pts.push_back(Y_[i]);
    return separable_one(X_, PointSet(X_.dim(), pts));
  }

  std::size_t lp_count() const { return memo_.size(); }

 private:
  bool fits(std::size_t i, const std::vector<std::size_t>& g) {
    for (auto j : g)
      if (conflict_[i][j]) return false;
    std::vector<std::size_t> h = g;
    h.push_back(i);
    return feasible(std::move(h));
  }

  bool rec(std::vector<int>& assign, std::vector<std::vector<std::size_t>>& groups, int k) {
    // pick the free point with the fewest admissible groups; only one empty group counts
    std::size_t best = n_;
    std::vector<int> best_opts;
    for (std::size_t i = 0; i < n_; ++i) {
      if (assign[i] >= 0) continue;
      std::vector<int> opts;
      bool empty_seen = false;
      for (int g = 0; g < k; ++g) {
        if (groups[g].empty()) {
          if (empty_seen) continue;
          empty_seen = true;
          opts.push_back(g);
        } else if (fits(i, groups[g])) {
          opts.push_back(g);
        }
      }
      if (opts.empty()) return false;
      if (best == n_ || opts.size() < best_opts.size()) {
        best = i;
        best_opts = std::move(opts);
        if (best_opts.size() == 1) break;
      }
    }
    if (best == n_) return true;
    for (int g : best_opts) {
      assign[best] = g;
      groups[g].push_back(best);
      std::sort(groups[g].begin(), groups[g].end());
      if (rec(assign, groups, k)) return true;
      groups[g].erase(std::find(groups[g].begin(), groups[g].end(), best));
      assign[best] = -1;
    }
    return false;
  }

  const PointSet& X_;
  const PointSet& Y_;
  std::size_t n_;
  std::vector<std::vector<bool>> conflict_;
  std::map<std::vector<std::size_t>, bool> memo_;
};

}  // namespace detail

// Minimum number of inequalities separating X from Y, up to k_max. The certificate uses the
// lexicographically least assignment (Y in sorted order, groups labelled by first use).
inline SeparationResult rc_relative(const PointSet& X, const PointSet& Y, int k_max) {
  if (X.dim() != Y.dim()) throw std::invalid_argument("dimension mismatch");
  if (!X.disjoint(Y)) throw std::invalid_argument("X and Y overlap");
  SeparationResult R;
  if (Y.empty()) {
    R.lower = 0;
    R.certificate = SeparationCertificate{};
    return R;
  }
  detail::GroupSearch S(X, Y);
  const std::size_t n = Y.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!S.point_separable(i)) {
      R.status = SeparationStatus::Inseparable;
      return R;
    }
  int k = S.clique_bound();
  for (; k <= k_max; ++k)
    if (S.complete(std::vector<int>(n, -1), k)) break;
  if (k > k_max) {
    R.status = SeparationStatus::KmaxExceeded;
    R.lower = k_max + 1;
    return R;
  }
  R.lower = k;
  std::vector<int> assign(n, -1);
  int used = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (int g = 0; g <= std::min(used, k - 1); ++g) {
      assign[i] = g;
      if (S.complete(assign, k)) break;
      assign[i] = -1;
    }
    if (assign[i] < 0) throw std::logic_error("canonical assignment lost");
    used = std::max(used, assign[i] + 1);
  }
  SeparationCertificate C;
  C.k = k;
  for (int g = 0; g < k; ++g) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (assign[i] == g) members.push_back(i);
    auto w = S.witness(members);
    if (!w) throw std::logic_error("group witness lost");
    C.system.push_back(*w);
  }
  for (std::size_t i = 0; i < n; ++i) C.assignment.emplace_back(Y[i], assign[i]);
  R.certificate = std::move(C);
  return R;
}

struct MilpModel {
  int d = 0, k = 0;
  std::size_t nX = 0, nY = 0;
  Q rho, bigM;
  std::size_t real_vars = 0, binary_vars = 0, rows = 0;
  std::string text;  // LP file format
};

// SEP-MILP for separating X from Y with k inequalities.
inline MilpModel emit_sep_milp(const PointSet& X, const PointSet& Y, int k) {
  if (X.empty() || Y.empty()) throw std::invalid_argument("emit_sep_milp needs nonempty X and Y");
  if (X.dim() != Y.dim()) throw std::invalid_argument("dimension mismatch");
  if (!X.disjoint(Y)) throw std::invalid_argument("X and Y overlap");
  if (k < 1) throw std::invalid_argument("k must be positive");
  MilpModel M;
  M.d = X.dim();
  M.k = k;
  M.nX = X.size();
  M.nY = Y.size();
  Int rho = 0;
  for (const auto& x : X) rho = std::max(rho, norm_inf(x));
  M.rho = make_q(rho);
  const Int dr = M.d * rho;
  const Int big = 2 * (dr + 1);
  M.bigM = make_q(big);
  M.real_vars = static_cast<std::size_t>(k) * (M.d + 1) + 1;
  M.binary_vars = Y.size() * k;

  auto term = [](std::ostringstream& os, Int c, const std::string& v, bool& first) {
    if (c == 0) return;
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    Int a = c < 0 ? -c : c;
    if (a != 1) os << a << " ";
    os << v;
    first = false;
  };
  auto a_name = [](int i, int j) { return "a_" + std::to_string(i) + "_" + std::to_string(j); };
  auto b_name = [](int i) { return "b_" + std::to_string(i); };
  auto s_name = [](std::size_t y, int i) { return "s_" + std::to_string(y) + "_" + std::to_string(i); };

  std::ostringstream os;
  os << "\\ SEP-MILP d=" << M.d << " k=" << k << " |X|=" << M.nX << " |Y|=" << M.nY << "\n";
  os << "\\ rho=" << rho << " M=" << big << " real=" << M.real_vars << " binary=" << M.binary_vars << "\n";
  os << "Maximize\n obj: mu\nSubject To\n";
  std::size_t rows = 0;
  for (std::size_t xi = 0; xi < X.size(); ++xi)
    for (int i = 0; i < k; ++i) {
      bool first = true;
      os << " in_" << xi << "_" << i << ": ";
      for (int j = 0; j < M.d; ++j) term(os, X[xi][j], a_name(i, j), first);
      term(os, -1, b_name(i), first);
      os << " <= 0\n";
      ++rows;
    }
  for (std::size_t yi = 0; yi < Y.size(); ++yi) {
    bool first = true;
    os << " cover_" << yi << ": ";
    for (int i = 0; i < k; ++i) term(os, 1, s_name(yi, i), first);
    os << " >= 1\n";
    ++rows;
  }
  // a_i·y + M(1 - s_y_i) >= b_i + mu
  for (std::size_t yi = 0; yi < Y.size(); ++yi)
    for (int i = 0; i < k; ++i) {
      bool first = true;
      os << " cut_" << yi << "_" << i << ": ";
      for (int j = 0; j < M.d; ++j) term(os, Y[yi][j], a_name(i, j), first);
      term(os, -1, b_name(i), first);
      term(os, -1, "mu", first);
      term(os, -big, s_name(yi, i), first);
      os << " >= " << -big << "\n";
      ++rows;
    }
  M.rows = rows;
  os << "Bounds\n";
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < M.d; ++j) os << " -1 <= " << a_name(i, j) << " <= 1\n";
    os << " " << -dr << " <= " << b_name(i) << " <= " << dr << "\n";
  }
  os << " 0 <= mu <= 1\nBinaries\n";
  for (std::size_t yi = 0; yi < Y.size(); ++yi)
    for (int i = 0; i < k; ++i) os << " " << s_name(yi, i) << "\n";
  os << "End\n";
  M.text = os.str();
  return M;
}

struct VerifyResult {
  bool ok = false;
  std::optional<IntVec> witness;
};

// Integer points of the system (inside box, when given) equal X.
inline VerifyResult verify_relaxation(const HPolyhedron& system, const PointSet& X,
                                      const std::optional<std::pair<Int, Int>>& box_range = std::nullopt) {
  if (system.dim != X.dim()) throw std::invalid_argument("dimension mismatch");
  for (const auto& x : X)
    if (!system.contains(x)) return {false, x};
  HPolyhedron P = system;
  if (box_range) {
    P = P.intersected(box(system.dim, box_range->first, box_range->second));
  } else if (is_feasible(P) && !recession_is_trivial(P)) {
    throw UnboundedError();
  }
  std::optional<IntVec> bad;
  visit_lattice_points(P, [&](const IntVec& p) {
    if (X.contains(p)) return true;
    bad = p;
    return false;
  });
  if (bad) return {false, bad};
  return {true, std::nullopt};
}

inline HPolyhedron to_polyhedron(int d, const std::vector<LinearInequality>& rows) { return HPolyhedron(d, rows); }

}  // namespace rc
