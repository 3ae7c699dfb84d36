#pragma once

#include "rc/lp.hpp"
#include "rc/types.hpp"

#include <optional>
#include <vector>

namespace rc {

// Row scaled to integer coefficients: a·x rel b with a, b integral.
inline LinearInequality integer_scaled(const LinearInequality& c) {
  Z den = 1;
  for (const auto& x : c.a) den = lcm(den, Z(x.get_den()));
  den = lcm(den, Z(c.b.get_den()));
  LinearInequality r = c;
  for (auto& x : r.a) x *= den;
  r.b *= den;
  return r;
}

// Tightens a row whose variables are all integral: divide by the content of a and round b.
// Returns nullopt when the row has no integer solution at all (EQ with non-divisible b).
inline std::optional<LinearInequality> tighten_integral(const LinearInequality& c0) {
  LinearInequality c = integer_scaled(c0);
  Z g = 0;
  for (const auto& x : c.a) g = gcd(g, Z(x.get_num()));
  if (g == 0) return c;
  for (auto& x : c.a) x /= g;
  Q b = c.b / g;
  if (c.rel == Rel::EQ) {
    if (!is_integer(b)) return std::nullopt;
    c.b = b;
    return c;
  }
  c.b = c.rel == Rel::LT ? Q(ceil_q(b) - 1) : Q(floor_q(b));
  c.rel = Rel::LE;
  return c;
}

namespace detail {

// max |entry| over integer-scaled rows, at least 1.
inline Z max_abs_coefficient(const HPolyhedron& P) {
  Z m = 1;
  for (const auto& c0 : P.constraints) {
    auto c = integer_scaled(c0);
    for (const auto& x : c.a) m = std::max(m, Z(abs(x.get_num())));
    m = std::max(m, Z(abs(c.b.get_num())));
  }
  return m;
}

}  // namespace detail

// Bound B such that a feasible system has a solution whose integer part satisfies |x_i| <= B:
// (n+1)·Δ with Δ <= a^n·n^{n/2} the Hadamard bound on subdeterminants of [A | b].
inline Z ilp_solution_bound(const HPolyhedron& P) {
  const unsigned long n = static_cast<unsigned long>(std::max(P.dim, 1));
  Z a = detail::max_abs_coefficient(P);
  Z h = pow_z(a, n);
  // n^{n/2} rounded up
  Z nn = pow_z(Z(static_cast<long>(n)), n);
  Z root;
  mpz_sqrt(root.get_mpz_t(), nn.get_mpz_t());
  if (root * root < nn) ++root;
  return Z(static_cast<long>(n + 1)) * h * root;
}

// Mixed-integer feasibility by branch and bound on the exact LP relaxation. Coordinates with
// integral[i] = true must take integer values. Strict rows are honoured. Complete: integer
// coordinates are confined to the a priori box of ilp_solution_bound.
inline std::optional<QVec> milp_feasible(const HPolyhedron& P, const std::vector<bool>& integral) {
  const int n = P.dim;
  HPolyhedron R(n);
  for (const auto& c : P.constraints) {
    bool all_int = true;
    for (int i = 0; i < n; ++i)
      if (c.a[i] != 0 && !integral[i]) all_int = false;
    if (!all_int) {
      R.add(c);
      continue;
    }
    auto t = tighten_integral(c);
    if (!t) return std::nullopt;
    R.add(*t);
  }
  Z B = ilp_solution_bound(R);
  for (int i = 0; i < n; ++i) {
    if (!integral[i]) continue;
    QVec e(n, Q(0));
    e[i] = 1;
    R.add({e, Q(B), Rel::LE});
    e[i] = -1;
    R.add({e, Q(B), Rel::LE});
  }
  std::vector<HPolyhedron> stack{R};
  while (!stack.empty()) {
    HPolyhedron node = std::move(stack.back());
    stack.pop_back();
    auto x = feasible_point(node);
    if (!x) continue;
    int branch = -1;
    for (int i = 0; i < n; ++i)
      if (integral[i] && !is_integer((*x)[i])) {
        branch = i;
        break;
      }
    if (branch < 0) return x;
    Z f = floor_q((*x)[branch]);
    QVec e(n, Q(0));
    e[branch] = 1;
    HPolyhedron lo = node, hi = node;
    lo.add({e, Q(f), Rel::LE});
    e[branch] = -1;
    hi.add({e, Q(-(f + 1)), Rel::LE});
    // explore the side nearer the relaxation point first
    Q frac = (*x)[branch] - Q(f);
    if (frac < Q(1, 2)) {
      stack.push_back(std::move(hi));
      stack.push_back(std::move(lo));
    } else {
      stack.push_back(std::move(lo));
      stack.push_back(std::move(hi));
    }
  }
  return std::nullopt;
}

// Integer point of P, or nullopt.
inline std::optional<IntVec> ilp_feasible(const HPolyhedron& P) {
  auto x = milp_feasible(P, std::vector<bool>(P.dim, true));
  if (!x) return std::nullopt;
  IntVec r(P.dim);
  for (int i = 0; i < P.dim; ++i) r[i] = to_ll(x->at(i).get_num());
  return r;
}

}  // namespace rc
