#pragma once

#include "rc/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rc {

using Int = long long;
using IntVec = std::vector<Int>;

inline Q dot(const QVec& a, const IntVec& x) {
  Q s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (x[i] != 0 && a[i] != 0) s += a[i] * static_cast<long>(x[i]);
  return s;
}

inline Q dot(const QVec& a, const QVec& x) {
  Q s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && x[i] != 0) s += a[i] * x[i];
  return s;
}

inline Z dot(const ZVec& a, const IntVec& x) {
  Z s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (x[i] != 0) s += a[i] * static_cast<long>(x[i]);
  return s;
}

inline Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline IntVec operator+(IntVec a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline IntVec operator-(IntVec a, const IntVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline IntVec operator*(Int s, IntVec a) {
  for (auto& x : a) x *= s;
  return a;
}

inline QVec to_q(const IntVec& v) {
  QVec out;
  out.reserve(v.size());
  for (Int x : v) out.push_back(make_q(x));
  return out;
}

inline QVec to_q(const ZVec& v) { return QVec(v.begin(), v.end()); }

inline IntVec to_int(const ZVec& v) {
  IntVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_ll(x));
  return out;
}

inline std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

inline IntVec unit_vector(int d, int i, Int scale = 1) {
  IntVec e(d, 0);
  e[i] = scale;
  return e;
}

inline Int norm_inf(const IntVec& v) {
  Int m = 0;
  for (Int x : v) m = std::max(m, x < 0 ? -x : x);
  return m;
}

// Finite set of integer points, kept sorted and duplicate-free.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int dim) : dim_(dim) {
    if (dim <= 0) throw std::invalid_argument("point set dimension must be positive");
  }
  PointSet(int dim, std::vector<IntVec> pts) : dim_(dim), pts_(std::move(pts)) {
    if (dim <= 0) throw std::invalid_argument("point set dimension must be positive");
    for (const auto& p : pts_)
      if (static_cast<int>(p.size()) != dim_)
        throw std::invalid_argument("point " + to_string(p) + " has wrong length");
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
  }
  PointSet(int dim, std::initializer_list<IntVec> pts)
      : PointSet(dim, std::vector<IntVec>(pts)) {}

  int dim() const { return dim_; }
  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  const std::vector<IntVec>& points() const { return pts_; }
  const IntVec& operator[](std::size_t i) const { return pts_[i]; }
  auto begin() const { return pts_.begin(); }
  auto end() const { return pts_.end(); }

  bool contains(const IntVec& p) const { return std::binary_search(pts_.begin(), pts_.end(), p); }

  void insert(const IntVec& p) {
    if (static_cast<int>(p.size()) != dim_) throw std::invalid_argument("point has wrong length");
    auto it = std::lower_bound(pts_.begin(), pts_.end(), p);
    if (it == pts_.end() || *it != p) pts_.insert(it, p);
  }

  PointSet with(const IntVec& p) const {
    PointSet r = *this;
    r.insert(p);
    return r;
  }

  PointSet united(const PointSet& o) const {
    std::vector<IntVec> all = pts_;
    all.insert(all.end(), o.pts_.begin(), o.pts_.end());
    return PointSet(dim_, std::move(all));
  }

  PointSet minus(const PointSet& o) const {
    std::vector<IntVec> r;
    for (const auto& p : pts_)
      if (!o.contains(p)) r.push_back(p);
    return PointSet(dim_, std::move(r));
  }

  bool subset_of(const PointSet& o) const {
    return std::all_of(pts_.begin(), pts_.end(), [&](const IntVec& p) { return o.contains(p); });
  }

  bool disjoint(const PointSet& o) const {
    return std::none_of(pts_.begin(), pts_.end(), [&](const IntVec& p) { return o.contains(p); });
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  int dim_ = 0;
  std::vector<IntVec> pts_;
};

enum class Rel { LE, LT, EQ };

inline const char* to_string(Rel r) {
  switch (r) {
    case Rel::LE: return "LE";
    case Rel::LT: return "LT";
    case Rel::EQ: return "EQ";
  }
  return "?";
}

// a·x rel b
struct LinearInequality {
  QVec a;
  Q b;
  Rel rel = Rel::LE;

  bool holds(const IntVec& x) const { return holds_value(dot(a, x)); }
  bool holds(const QVec& x) const { return holds_value(dot(a, x)); }
  bool holds_value(const Q& v) const {
    switch (rel) {
      case Rel::LE: return v <= b;
      case Rel::LT: return v < b;
      case Rel::EQ: return v == b;
    }
    return false;
  }
  friend bool operator==(const LinearInequality&, const LinearInequality&) = default;
};

inline LinearInequality make_ineq(const IntVec& a, Int b, Rel rel = Rel::LE) {
  return {to_q(a), make_q(b), rel};
}

// Scale to a primitive integer normal (sign kept); EQ rows get a positive leading entry.
inline LinearInequality normalized(const LinearInequality& c) {
  QVec all = c.a;
  all.push_back(c.b);
  bool zero = std::all_of(c.a.begin(), c.a.end(), [](const Q& x) { return x == 0; });
  if (zero) return c;
  Z den = 1;
  for (const auto& x : all) den = lcm(den, x.get_den());
  Z g = 0;
  for (const auto& x : c.a) g = gcd(g, x.get_num() * (den / x.get_den()));
  Q scale = Q(den) / Q(g);
  LinearInequality r;
  r.rel = c.rel;
  r.a.resize(c.a.size());
  for (std::size_t i = 0; i < c.a.size(); ++i) r.a[i] = c.a[i] * scale;
  r.b = c.b * scale;
  if (c.rel == Rel::EQ) {
    auto it = std::find_if(r.a.begin(), r.a.end(), [](const Q& x) { return x != 0; });
    if (*it < 0) {
      for (auto& x : r.a) x = -x;
      r.b = -r.b;
    }
  }
  return r;
}

inline bool operator<(const LinearInequality& x, const LinearInequality& y) {
  if (x.rel != y.rel) return static_cast<int>(x.rel) > static_cast<int>(y.rel);  // EQ first
  if (x.a != y.a) return std::lexicographical_compare(x.a.begin(), x.a.end(), y.a.begin(), y.a.end());
  return x.b < y.b;
}

struct HPolyhedron {
  int dim = 0;
  std::vector<LinearInequality> constraints;

  HPolyhedron() = default;
  explicit HPolyhedron(int d) : dim(d) {}
  HPolyhedron(int d, std::vector<LinearInequality> cs) : dim(d), constraints(std::move(cs)) {
    for (const auto& c : constraints)
      if (static_cast<int>(c.a.size()) != dim) throw std::invalid_argument("constraint has wrong length");
  }

  void add(LinearInequality c) {
    if (static_cast<int>(c.a.size()) != dim) throw std::invalid_argument("constraint has wrong length");
    constraints.push_back(std::move(c));
  }

  bool contains(const IntVec& x) const {
    return std::all_of(constraints.begin(), constraints.end(), [&](const auto& c) { return c.holds(x); });
  }
  bool contains(const QVec& x) const {
    return std::all_of(constraints.begin(), constraints.end(), [&](const auto& c) { return c.holds(x); });
  }

  HPolyhedron intersected(const HPolyhedron& o) const {
    HPolyhedron r = *this;
    for (const auto& c : o.constraints) r.add(c);
    return r;
  }

  friend bool operator==(const HPolyhedron&, const HPolyhedron&) = default;
};

// Integer box [lo,hi]^d as an H-polyhedron.
inline HPolyhedron box(int d, Int lo, Int hi) {
  HPolyhedron P(d);
  for (int i = 0; i < d; ++i) {
    P.add(make_ineq(unit_vector(d, i), hi));
    P.add(make_ineq(unit_vector(d, i, -1), -lo));
  }
  return P;
}

}  // namespace rc
