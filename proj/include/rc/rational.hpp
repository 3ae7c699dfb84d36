#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rc {

using Z = mpz_class;
using Q = mpq_class;
using QVec = std::vector<Q>;
using ZVec = std::vector<Z>;

inline Q make_q(long long v) { return Q(static_cast<long>(v)); }

inline Q make_q(const Z& n, const Z& d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  Q q(n, d);
  q.canonicalize();
  return q;
}

// "p/q" or "p"; whitespace is not accepted.
inline Q parse_q(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::string str(s);
  auto slash = str.find('/');
  try {
    if (slash == std::string::npos) return Q(Z(str, 10));
    return make_q(Z(str.substr(0, slash), 10), Z(str.substr(slash + 1), 10));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational '" + str + "'");
  }
}

inline std::string to_string(const Q& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Z& z) { return z.get_str(); }

inline Z floor_q(const Q& q) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Z ceil_q(const Q& q) {
  Z r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool is_integer(const Q& q) { return q.get_den() == 1; }

inline long long to_ll(const Z& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return z.get_si();
}

inline Z gcd(const Z& a, const Z& b) {
  Z r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Z lcm(const Z& a, const Z& b) {
  Z r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Z binomial(unsigned long n, unsigned long k) {
  Z r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Z factorial(unsigned long n) {
  Z r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Z pow_z(const Z& base, unsigned long e) {
  Z r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// Integer multiple of v whose entries are coprime; zero stays zero.
inline ZVec primitive(const QVec& v) {
  Z den = 1;
  for (const auto& x : v) den = lcm(den, x.get_den());
  ZVec out(v.size());
  Z g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].get_num() * (den / v[i].get_den());
    g = gcd(g, out[i]);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

inline ZVec primitive(const ZVec& v) {
  Z g = 0;
  for (const auto& x : v) g = gcd(g, x);
  ZVec out = v;
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

}  // namespace rc
