#pragma once

#include "rc/lp.hpp"
#include "rc/types.hpp"

#include <map>
#include <vector>

namespace rc {

namespace detail {

inline bool zero_row(const LinearInequality& c) {
  return std::all_of(c.a.begin(), c.a.end(), [](const Q& x) { return x == 0; });
}

inline LinearInequality contradiction(int dim) { return {QVec(dim, Q(0)), Q(-1), Rel::LE}; }

}  // namespace detail

// Pointwise simplification: constant rows evaluated, rows scaled to primitive normals,
// parallel duplicates merged keeping the tightest.
inline HPolyhedron simplify_rows(const HPolyhedron& P) {
  HPolyhedron out(P.dim);
  std::map<QVec, std::pair<Q, Rel>> tightest;
  std::vector<LinearInequality> eqs;
  for (const auto& c0 : P.constraints) {
    if (detail::zero_row(c0)) {
      if (!c0.holds_value(Q(0))) {
        out.constraints = {detail::contradiction(P.dim)};
        return out;
      }
      continue;
    }
    LinearInequality c = normalized(c0);
    if (c.rel == Rel::EQ) {
      if (std::find(eqs.begin(), eqs.end(), c) == eqs.end()) eqs.push_back(c);
      continue;
    }
    auto it = tightest.find(c.a);
    if (it == tightest.end()) {
      tightest.emplace(c.a, std::make_pair(c.b, c.rel));
    } else {
      auto& [b, rel] = it->second;
      if (c.b < b || (c.b == b && c.rel == Rel::LT)) {
        b = c.b;
        rel = c.rel;
      }
    }
  }
  for (auto& e : eqs) out.constraints.push_back(e);
  for (auto& [a, br] : tightest) out.constraints.push_back({a, br.first, br.second});
  return out;
}

// Drops rows implied by the others (exact, strictness-aware).
inline HPolyhedron remove_redundant(const HPolyhedron& P) {
  HPolyhedron cur = simplify_rows(P);
  if (cur.constraints.size() == 1 && detail::zero_row(cur.constraints[0])) return cur;
  if (!is_feasible(cur)) return HPolyhedron(P.dim, {detail::contradiction(P.dim)});
  for (std::size_t i = cur.constraints.size(); i-- > 0;) {
    const auto c = cur.constraints[i];
    if (c.rel == Rel::EQ) continue;
    HPolyhedron test(P.dim);
    for (std::size_t j = 0; j < cur.constraints.size(); ++j)
      if (j != i) test.constraints.push_back(cur.constraints[j]);
    QVec neg = c.a;
    for (auto& x : neg) x = -x;
    // violation of a·x <= b is a·x > b; violation of a·x < b is a·x >= b
    test.constraints.push_back({neg, -c.b, c.rel == Rel::LE ? Rel::LT : Rel::LE});
    if (!is_feasible(test)) cur.constraints.erase(cur.constraints.begin() + i);
  }
  return cur;
}

// Projection of P along coordinate `var` (the coordinate is kept with zero coefficients).
inline HPolyhedron fourier_motzkin(const HPolyhedron& P, int var, bool prune = true) {
  const int d = P.dim;
  // Equality with a nonzero coefficient: substitute.
  for (const auto& e : P.constraints) {
    if (e.rel != Rel::EQ || e.a[var] == 0) continue;
    HPolyhedron out(d);
    for (const auto& c : P.constraints) {
      if (&c == &e) continue;
      if (c.a[var] == 0) {
        out.constraints.push_back(c);
        continue;
      }
      Q f = c.a[var] / e.a[var];
      LinearInequality r = c;
      for (int j = 0; j < d; ++j) r.a[j] -= f * e.a[j];
      r.b -= f * e.b;
      r.a[var] = 0;
      out.constraints.push_back(r);
    }
    return prune ? remove_redundant(out) : simplify_rows(out);
  }
  std::vector<LinearInequality> lower, upper;
  HPolyhedron out(d);
  for (const auto& c : P.constraints) {
    if (c.a[var] == 0) {
      out.constraints.push_back(c);
    } else if (c.rel == Rel::EQ) {
      // unreachable: handled above
    } else if (c.a[var] > 0) {
      upper.push_back(c);
    } else {
      lower.push_back(c);
    }
  }
  for (const auto& u : upper)
    for (const auto& l : lower) {
      // u.a[var] > 0, l.a[var] < 0: combine (-l.a[var])·u + u.a[var]·l
      Q fu = -l.a[var], fl = u.a[var];
      LinearInequality r;
      r.a.resize(d);
      for (int j = 0; j < d; ++j) r.a[j] = fu * u.a[j] + fl * l.a[j];
      r.a[var] = 0;
      r.b = fu * u.b + fl * l.b;
      r.rel = (u.rel == Rel::LT || l.rel == Rel::LT) ? Rel::LT : Rel::LE;
      out.constraints.push_back(std::move(r));
    }
  return prune ? remove_redundant(out) : simplify_rows(out);
}

}  // namespace rc
