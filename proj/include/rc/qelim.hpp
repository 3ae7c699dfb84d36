#pragma once

#include "rc/formula.hpp"
#include "rc/fourier_motzkin.hpp"
#include "rc/ilp.hpp"
#include "rc/separation.hpp"

#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rc {

// Disjunct with every z-atom written as z >= L or z <= U.
struct NormalDisjunct {
  Conjunction free;
  std::vector<detail::Affine> lower, upper;
};

// Strict z-bounds become non-strict with a fresh real u > 0 declared in F.
inline NormalDisjunct normalize_z_bounds(const Conjunction& c, int z, BcliFormula& F) {
  NormalDisjunct N;
  for (const auto& a : c) {
    Q cz = a.coefficient(z);
    if (cz == 0) {
      N.free.push_back(a);
      continue;
    }
    // cz·z rel rhs - Σ c_v v
    detail::Affine bound;
    for (const auto& [v, cv] : a.coef)
      if (v != z) bound.coef[v] = -cv / cz;
    bound.c = a.rhs / cz;
    const bool upper = cz > 0;
    if (a.rel == Rel::EQ) {
      N.upper.push_back(bound);
      N.lower.push_back(bound);
      continue;
    }
    if (a.rel == Rel::LT) {
      int u = F.add_var(F.fresh_name("u"), Sort::Real);
      bound.coef[u] = upper ? Q(-1) : Q(1);
      LinAtom pos;
      pos.coef[u] = -1;
      pos.rhs = 0;
      pos.rel = Rel::LT;
      N.free.push_back(pos);
    }
    (upper ? N.upper : N.lower).push_back(bound);
  }
  return N;
}

namespace detail {

// Atoms of D(t) for t = v + offset.
inline Conjunction substitute(const NormalDisjunct& D, int v, const Q& offset) {
  Conjunction out = D.free;
  for (const auto& L : D.lower) {
    LinAtom a;
    for (const auto& [w, c] : L.coef) a.add_term(w, c);
    a.add_term(v, Q(-1));
    a.rhs = offset - L.c;
    out.push_back(a);
  }
  for (const auto& U : D.upper) {
    LinAtom a;
    for (const auto& [w, c] : U.coef) a.add_term(w, -c);
    a.add_term(v, Q(1));
    a.rhs = U.c - offset;
    out.push_back(a);
  }
  return out;
}

inline Formula conj_formula(const Conjunction& c) {
  std::vector<Formula> k;
  for (const auto& a : c) k.push_back(Formula::of(a));
  return Formula::all(std::move(k));
}

}  // namespace detail

struct CoverStats {
  std::size_t z_free = 0, chains = 0;
};

// ∃v ∈ Z^n formula expressing that the intervals of the disjuncts cover Z. Chains use pairwise
// distinct disjuncts: left-infinite start, finite middles, right-infinite end.
inline Formula build_cover_formula(const std::vector<NormalDisjunct>& D, BcliFormula& F, CoverStats* stats = nullptr) {
  const std::size_t s = D.size();
  std::vector<Formula> ors;
  CoverStats st;
  for (const auto& d : D)
    if (d.lower.empty() && d.upper.empty()) {
      ors.push_back(detail::conj_formula(d.free));
      ++st.z_free;
    }
  std::vector<int> v;
  auto v_var = [&](std::size_t i) {
    while (v.size() <= i) v.push_back(F.add_var(F.fresh_name("v"), Sort::Int));
    return v[i];
  };
  std::vector<std::size_t> chain;
  std::vector<bool> used(s, false);
  std::function<void()> extend = [&] {
    // chain holds j_1..j_m; try closing with a right-infinite interval, then a finite middle
    const std::size_t n = chain.size();
    for (std::size_t j = 0; j < s; ++j) {
      if (used[j] || !D[j].upper.empty() || D[j].lower.empty()) continue;
      Conjunction c = detail::substitute(D[chain[0]], v_var(0), Q(0));
      for (std::size_t i = 1; i < n; ++i) {
        auto a = detail::substitute(D[chain[i]], v_var(i - 1), Q(1));
        auto b = detail::substitute(D[chain[i]], v_var(i), Q(0));
        c.insert(c.end(), a.begin(), a.end());
        c.insert(c.end(), b.begin(), b.end());
      }
      auto e = detail::substitute(D[j], v_var(n - 1), Q(1));
      c.insert(c.end(), e.begin(), e.end());
      ors.push_back(detail::conj_formula(c));
      ++st.chains;
    }
    if (n + 1 >= s) return;
    for (std::size_t j = 0; j < s; ++j) {
      if (used[j] || D[j].upper.empty() || D[j].lower.empty()) continue;
      used[j] = true;
      chain.push_back(j);
      extend();
      chain.pop_back();
      used[j] = false;
    }
  };
  for (std::size_t j = 0; j < s; ++j) {
    if (!D[j].lower.empty() || D[j].upper.empty()) continue;
    used[j] = true;
    chain = {j};
    extend();
    used[j] = false;
  }
  if (stats) *stats = st;
  return Formula::any(std::move(ors));
}

namespace detail {

inline HPolyhedron to_polyhedron(const Conjunction& c, int n) {
  HPolyhedron P(n);
  for (const auto& a : c) {
    QVec row(n, Q(0));
    for (const auto& [v, x] : a.coef) row[v] = x;
    P.add({std::move(row), a.rhs, a.rel});
  }
  return P;
}

}  // namespace detail

struct ExistsResult {
  bool valid = false;
  std::size_t disjuncts = 0;
  std::optional<std::vector<Q>> witness;  // integer variables only; reals are eliminated
};

// ∃ all variables of F : F.root. Reals are removed by Fourier–Motzkin per DNF disjunct, then
// the integer remainder is an ILP.
inline ExistsResult decide_exists(const BcliFormula& F) {
  const int n = static_cast<int>(F.vars.size());
  ExistsResult R;
  Dnf D = dnf_terms(F.root);
  R.disjuncts = D.size();
  std::vector<int> ints;
  for (int i = 0; i < n; ++i)
    if (F.vars[i].sort == Sort::Int) ints.push_back(i);
  for (const auto& c : D) {
    HPolyhedron P = simplify_rows(detail::to_polyhedron(c, n));
    for (int i = 0; i < n && !P.constraints.empty(); ++i)
      if (F.vars[i].sort == Sort::Real) P = fourier_motzkin(P, i);
    HPolyhedron I(static_cast<int>(ints.size()));
    for (const auto& r : P.constraints) {
      QVec a;
      for (int i : ints) a.push_back(r.a[i]);
      I.add({a, r.b, r.rel});
    }
    auto w = ilp_feasible(I);
    if (!w) continue;
    R.valid = true;
    std::vector<Q> val(n, Q(0));
    for (std::size_t t = 0; t < ints.size(); ++t) val[ints[t]] = make_q((*w)[t]);
    R.witness = std::move(val);
    return R;
  }
  return R;
}

struct ForallResult {
  bool valid = false;
  std::size_t source_disjuncts = 0, cover_disjuncts = 0;
  CoverStats cover;
  BcliFormula cover_formula;
};

// ∃ reals ∀ z ∈ Z : C. Every variable except z must be real.
inline ForallResult decide_forall_z_detail(const BcliFormula& C, const std::string& z_name) {
  const int z = C.index_of(z_name);
  if (z < 0) throw std::invalid_argument("unknown variable '" + z_name + "'");
  if (C.vars[z].sort != Sort::Int) throw std::invalid_argument("universal variable must be int");
  for (std::size_t i = 0; i < C.vars.size(); ++i)
    if (static_cast<int>(i) != z && C.vars[i].sort != Sort::Real)
      throw std::invalid_argument("only the universal variable may be int");
  ForallResult R;
  BcliFormula G{C.vars, Formula::truth()};
  Dnf D = dnf_terms(C.root);
  R.source_disjuncts = D.size();
  std::vector<NormalDisjunct> N;
  for (const auto& c : D) N.push_back(normalize_z_bounds(c, z, G));
  G.root = build_cover_formula(N, G, &R.cover);
  R.cover_disjuncts = R.cover.z_free + R.cover.chains;
  // z itself no longer occurs; mark it real so it is eliminated trivially
  G.vars[z].sort = Sort::Real;
  R.valid = decide_exists(G).valid;
  R.cover_formula = std::move(G);
  return R;
}

inline bool decide_forall_z(const BcliFormula& C, const std::string& z_name = "z") {
  return decide_forall_z_detail(C, z_name).valid;
}

// ---- parallel lattice lines ----

struct NonParallelError : std::invalid_argument {
  NonParallelError() : std::invalid_argument("NonParallel: lines are not parallel") {}
};

struct Line {
  IntVec point, direction;
};

struct LineFamily {
  IntVec u;                      // primitive common direction
  std::vector<IntVec> base_points;
  PointSet finite_part;
};

inline IntVec primitive_int(const IntVec& v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g == 0) throw std::invalid_argument("zero direction");
  IntVec r = v;
  for (auto& x : r) x /= g;
  return r;
}

inline LineFamily make_line_family(const std::vector<Line>& lines, const PointSet& Y0) {
  if (lines.empty()) throw std::invalid_argument("no lines");
  LineFamily L{primitive_int(lines[0].direction), {}, Y0};
  IntVec neg = L.u;
  for (auto& x : neg) x = -x;
  for (const auto& l : lines) {
    IntVec p = primitive_int(l.direction);
    if (p != L.u && p != neg) throw NonParallelError();
    // lines p_i + R·u and p_j + R·u coincide iff p_i - p_j ∈ R·u
    for (const auto& q : L.base_points) {
      IntVec diff = l.point - q;
      bool parallel = true;
      for (std::size_t a = 0; a < diff.size(); ++a)
        for (std::size_t b = a + 1; b < diff.size(); ++b)
          if (diff[a] * L.u[b] != diff[b] * L.u[a]) parallel = false;
      if (parallel) throw std::invalid_argument("duplicate line");
    }
    L.base_points.push_back(l.point);
  }
  return L;
}

// Finite truncation: Y_0 and the line points p_i + z·u with |z| <= R.
inline PointSet truncate_lines(const LineFamily& L, Int R) {
  PointSet Y = L.finite_part;
  for (const auto& p : L.base_points)
    for (Int z = -R; z <= R; ++z) Y.insert(p + z * L.u);
  return Y;
}

// Every lattice point of p + Z·u violates some row.
inline bool line_cut_everywhere(const std::vector<LinearInequality>& sys, const IntVec& p, const IntVec& u) {
  // row j is violated for {z : e z > b - a·p}, e = a·u
  std::optional<Q> left, right;  // violated for z < left, z > right
  for (const auto& r : sys) {
    Q e = dot(r.a, u), t = r.b - dot(r.a, p);
    if (e == 0) {
      if (t < 0) return true;
    } else if (e > 0) {
      Q th = t / e;
      if (!right || th < *right) right = th;
    } else {
      Q th = t / e;
      if (!left || th > *left) left = th;
    }
  }
  if (!left || !right) return false;
  // uncovered integers: left <= z <= right
  return ceil_q(*left) > floor_q(*right);
}

inline bool check_lines_certificate(const PointSet& X, const LineFamily& L, const std::vector<LinearInequality>& sys) {
  for (const auto& x : X)
    for (const auto& r : sys)
      if (!r.holds(x)) return false;
  for (const auto& y : L.finite_part) {
    bool cut = false;
    for (const auto& r : sys) cut = cut || !r.holds(y);
    if (!cut) return false;
  }
  for (const auto& p : L.base_points)
    if (!line_cut_everywhere(sys, p, L.u)) return false;
  return true;
}

struct LinesResult {
  SeparationStatus status = SeparationStatus::Found;
  int k = 0;
  std::vector<int> epsilon;
  std::vector<LinearInequality> system;
  std::size_t patterns_tried = 0, milp_calls = 0;
};

namespace detail {

struct LinesSearch {
  BcliFormula F;
  Conjunction base;
  std::vector<Dnf> groups;
  std::size_t milp_calls = 0;

  std::optional<std::vector<Q>> solve() {
    std::vector<std::size_t> order(groups.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return groups[a].size() < groups[b].size(); });
    Conjunction cur = base;
    return rec(order, 0, cur);
  }

  std::optional<std::vector<Q>> rec(const std::vector<std::size_t>& order, std::size_t i, Conjunction& cur) {
    const int n = static_cast<int>(F.vars.size());
    HPolyhedron P = to_polyhedron(cur, n);
    if (!is_feasible(P)) return std::nullopt;
    if (i == order.size()) {
      std::vector<bool> integral(n);
      for (int t = 0; t < n; ++t) integral[t] = F.vars[t].sort == Sort::Int;
      ++milp_calls;
      auto x = milp_feasible(P, integral);
      if (!x) return std::nullopt;
      return std::vector<Q>(x->begin(), x->end());
    }
    for (const auto& c : groups[order[i]]) {
      const std::size_t mark = cur.size();
      cur.insert(cur.end(), c.begin(), c.end());
      auto r = rec(order, i + 1, cur);
      cur.resize(mark);
      if (r) return r;
    }
    return std::nullopt;
  }
};

}  // namespace detail

// Least k <= k_max such that k inequalities hold on X and cut Y_0 and every lattice point of
// the lines. Rows are scaled so that a_j·u = ε_j ∈ {-1,0,1}; since rows may be permuted, ε is
// taken non-increasing.
inline LinesResult rc_with_parallel_lines(const PointSet& X, const LineFamily& L, int k_max) {
  const int d = X.dim();
  if (static_cast<int>(L.u.size()) != d || L.finite_part.dim() != d) throw std::invalid_argument("dimension mismatch");
  if (!X.disjoint(L.finite_part)) throw std::invalid_argument("X meets Y_0");
  for (const auto& p : L.base_points)
    for (const auto& x : X) {
      IntVec diff = x - p;
      bool on = true;
      for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
          if (diff[a] * L.u[b] != diff[b] * L.u[a]) on = false;
      if (on) throw std::invalid_argument("a line meets X");
    }
  LinesResult R;
  for (int k = 1; k <= k_max; ++k) {
    std::vector<int> eps(k, 1);
    for (;;) {
      ++R.patterns_tried;
      detail::LinesSearch S;
      auto a_var = [&](int j, int t) { return j * d + t; };
      auto b_var = [&](int j) { return k * d + j; };
      for (int j = 0; j < k; ++j)
        for (int t = 0; t < d; ++t) S.F.add_var("a_" + std::to_string(j) + "_" + std::to_string(t), Sort::Real);
      for (int j = 0; j < k; ++j) S.F.add_var("b_" + std::to_string(j), Sort::Real);
      // a_j·p - b_j rel rhs  (sign s on the row)
      auto row = [&](int j, const IntVec& p, Q s, Q rhs, Rel rel) {
        LinAtom a;
        for (int t = 0; t < d; ++t) a.add_term(a_var(j, t), s * make_q(p[t]));
        a.add_term(b_var(j), -s);
        a.rhs = rhs;
        a.rel = rel;
        return a;
      };
      for (const auto& x : X)
        for (int j = 0; j < k; ++j) S.base.push_back(row(j, x, Q(1), Q(0), Rel::LE));
      for (int j = 0; j < k; ++j) {
        LinAtom e;
        for (int t = 0; t < d; ++t) e.add_term(a_var(j, t), make_q(L.u[t]));
        e.rhs = eps[j];
        e.rel = Rel::EQ;
        S.base.push_back(e);
      }
      for (const auto& y : L.finite_part) {
        Dnf g;
        for (int j = 0; j < k; ++j) g.push_back({row(j, y, Q(-1), Q(0), Rel::LT)});
        S.groups.push_back(std::move(g));
      }
      for (const auto& p : L.base_points) {
        // ∀z: ⋁_j ε_j z + a_j·p - b_j > 0
        int z = S.F.add_var(S.F.fresh_name("z"), Sort::Int);
        std::vector<NormalDisjunct> N;
        for (int j = 0; j < k; ++j) {
          LinAtom a = row(j, p, Q(-1), Q(0), Rel::LT);
          a.add_term(z, Q(-eps[j]));
          N.push_back(normalize_z_bounds({a}, z, S.F));
        }
        S.groups.push_back(dnf_terms(build_cover_formula(N, S.F)));
      }
      auto sol = S.solve();
      R.milp_calls += S.milp_calls;
      if (sol) {
        R.k = k;
        R.epsilon = eps;
        for (int j = 0; j < k; ++j) {
          LinearInequality r{QVec(d), (*sol)[b_var(j)], Rel::LE};
          for (int t = 0; t < d; ++t) r.a[t] = (*sol)[a_var(j, t)];
          R.system.push_back(r);
        }
        if (!check_lines_certificate(X, L, R.system)) throw std::logic_error("line certificate failed its check");
        return R;
      }
      // next non-increasing pattern over {1, 0, -1}
      int i = k - 1;
      while (i >= 0 && eps[i] == -1) --i;
      if (i < 0) break;
      --eps[i];
      for (int t = i + 1; t < k; ++t) eps[t] = eps[i];
    }
  }
  R.status = SeparationStatus::KmaxExceeded;
  R.k = k_max + 1;
  return R;
}

}  // namespace rc
