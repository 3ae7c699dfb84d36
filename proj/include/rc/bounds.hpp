#pragma once

#include "rc/geometry.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace rc {

// s_1 = 2, s_i = 1 + s_1 ⋯ s_{i-1}.
inline Z sylvester(unsigned i) {
  if (i == 0) throw std::invalid_argument("Sylvester index starts at 1");
  Z prod = 1, s = 2;
  for (unsigned k = 1; k <= i; ++k) {
    s = prod + 1;
    prod *= s;
  }
  return s;
}

inline bool sylvester_within_double_exponential(unsigned i) {
  return sylvester(i) <= pow_z(Z(2), 1ul << (i - 1));
}

// Observer coordinates are bounded in terms of c_d = d(2d+1)(s_{2d+1} - 1).
inline Z observer_constant(unsigned d) { return Z(d) * Z(2 * d + 1) * (sylvester(2 * d + 1) - 1); }

// card(obs(X)) <= c'_d card(X) with c'_d = d! (1 + c_d)^{2d} binom(2d, d).
inline Z observer_count_constant(unsigned d) {
  return factorial(d) * pow_z(1 + observer_constant(d), 2 * d) * binomial(2 * d, d);
}

// Value of c_3 as printed in the source literature (a rounded decimal).
inline constexpr const char* kPrintedC3 = "2.23651195966947e14";

// Conjectured replacement for c_d in the box search: s_3^2 - 2.
inline constexpr Int kAsymmetryConstant = 47;

struct LowerBound {
  int value = 0;
  std::string reason;
};

// Largest k + 1 with (k - 1) binom(k, floor(k/2)) <= n and k >= 2; 0 if none.
inline int sperner_bound(int n) {
  int best = 0;
  for (int k = 2;; ++k) {
    Z lhs = Z(k - 1) * binomial(k, k / 2);
    if (lhs > n) break;
    best = k + 1;
  }
  return best;
}

// Same with the weaker 2^k in place of the central binomial coefficient.
inline int power_bound(int n) {
  int best = 0;
  for (int k = 2;; ++k) {
    Z lhs = Z(k - 1) * pow_z(Z(2), k);
    if (lhs > n) break;
    best = k + 1;
  }
  return best;
}

// Smallest integer strictly above log2(n) - log2(log2(n)); 0 for n < 4.
inline int log_form_bound(int n) {
  if (n < 4) return 0;
  long double l = std::log2(static_cast<long double>(n));
  long double v = l - std::log2(l);
  long double r = std::round(v);
  if (std::fabs(v - r) < 1e-12L) return static_cast<int>(r) + 1;
  return static_cast<int>(std::floor(v)) + 1;
}

// Lower bound on rc(X) from the dimension of aff(X).
inline LowerBound rc_lower_bound_for_dim(int n) {
  LowerBound best{1, "nonempty"};
  auto offer = [&](int v, const char* why) {
    if (v > best.value) best = {v, why};
  };
  if (n <= 4) offer(n + 1, "dim+1 (dim <= 4)");
  offer(sperner_bound(n), "sperner");
  offer(log_form_bound(n), "log-form");
  return best;
}

inline LowerBound rc_lower_bound(const PointSet& X) {
  if (X.empty()) throw std::invalid_argument("empty point set");
  return rc_lower_bound_for_dim(affine_dimension(X));
}

// Every rational relaxation of X needs dim(X) + 1 rows.
inline int rc_q_floor(const PointSet& X) { return affine_dimension(X) + 1; }

}  // namespace rc
