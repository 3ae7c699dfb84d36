#include "rc/observers.hpp"
#include "rc/separation.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace rc;
using namespace rc::testing;

namespace {

void expect_separates(const PointSet& X, const PointSet& G, const LinearInequality& c) {
  for (const auto& x : X) EXPECT_LE(dot(c.a, x), c.b);
  for (const auto& y : G) EXPECT_GE(dot(c.a, y), c.b + 1);
}

PointSet scaled(const PointSet& X, Int s) {
  std::vector<IntVec> pts;
  for (const auto& x : X) pts.push_back(s * x);
  return PointSet(X.dim(), pts);
}

}  // namespace

TEST(SeparableOne, Examples) {
  PointSet X(2, {{0, 0}}), G(2, {{1, 0}});
  auto c = separable_one(X, G);
  ASSERT_TRUE(c);
  expect_separates(X, G, *c);

  EXPECT_FALSE(separable_one(PointSet(2, {{0, 0}, {1, 1}}), PointSet(2, {{0, 1}, {1, 0}})));

  PointSet X1(1, {{0}, {1}}), G1(1, {{2}});
  auto c1 = separable_one(X1, G1);
  ASSERT_TRUE(c1);
  EXPECT_GT(c1->a[0], 0);
  Q cut = c1->b / c1->a[0];
  EXPECT_GE(cut, 1);
  EXPECT_LT(cut, 2);

  EXPECT_THROW(separable_one(X1, PointSet(1, {{1}})), std::invalid_argument);
}

TEST(SeparableOne, AgreesWithHullDisjointness) {
  Rng rng(61);
  for (int it = 0; it < 80; ++it) {
    auto [X, Y] = random_separation_instance(rng);
    if (Y.empty()) continue;
    auto c = separable_one(X, Y);
    EXPECT_EQ(c.has_value(), hulls_disjoint(X, Y));
    if (c) expect_separates(X, Y, *c);
  }
}

TEST(RcRelative, Examples) {
  auto xr = rc_relative(PointSet(2, {{0, 0}, {1, 1}}), PointSet(2, {{0, 1}, {1, 0}}), 8);
  ASSERT_EQ(xr.status, SeparationStatus::Found);
  EXPECT_EQ(xr.certificate->k, 2);

  auto seg = rc_relative(PointSet(1, {{0}}), PointSet(1, {{-1}, {1}}), 8);
  EXPECT_EQ(seg.certificate->k, 2);

  PointSet sq = cube01(2);
  PointSet O = observers_parity(sq);
  auto r = rc_relative(sq, O, 8);
  ASSERT_EQ(r.status, SeparationStatus::Found);
  EXPECT_EQ(r.certificate->k, 3);
  EXPECT_TRUE(check_certificate(sq, O, *r.certificate));
}

TEST(RcRelative, KmaxAndInseparable) {
  PointSet sq = cube01(2);
  auto r = rc_relative(sq, observers_parity(sq), 2);
  EXPECT_EQ(r.status, SeparationStatus::KmaxExceeded);
  EXPECT_EQ(r.lower, 3);
  EXPECT_FALSE(r.certificate);

  auto in = rc_relative(PointSet(1, {{0}, {2}}), PointSet(1, {{1}}), 4);
  EXPECT_EQ(in.status, SeparationStatus::Inseparable);
}

TEST(RcRelative, CanonicalAssignment) {
  // first point always in group 0; labels appear in order of first use
  auto r = rc_relative(PointSet(1, {{0}}), PointSet(1, {{-2}, {-1}, {1}, {2}}), 4);
  ASSERT_TRUE(r.certificate);
  std::vector<int> labels;
  for (const auto& [y, g] : r.certificate->assignment) labels.push_back(g);
  EXPECT_EQ(labels, (std::vector<int>{0, 0, 1, 1}));
}

TEST(RcRelativeProperty, AgreesWithExhaustivePartitions) {
  Rng rng(67);
  for (int it = 0; it < 60; ++it) {
    auto [X, Y] = random_separation_instance(rng);
    auto r = rc_relative(X, Y, 3);
    int brute = brute_rc_relative(X, Y, 3);
    bool inseparable = false;
    for (const auto& y : Y) inseparable = inseparable || !hulls_disjoint(X, PointSet(Y.dim(), {y}));
    if (inseparable) {
      EXPECT_EQ(r.status, SeparationStatus::Inseparable);
      continue;
    }
    if (brute > 3) {
      EXPECT_EQ(r.status, SeparationStatus::KmaxExceeded);
      continue;
    }
    ASSERT_EQ(r.status, SeparationStatus::Found) << it;
    EXPECT_EQ(r.certificate->k, brute) << it;
    EXPECT_TRUE(check_certificate(X, Y, *r.certificate));
  }
}

TEST(RcRelativeProperty, Monotone) {
  Rng rng(71);
  for (int it = 0; it < 30; ++it) {
    auto [X, Y] = random_separation_instance(rng);
    if (Y.size() < 2) continue;
    PointSet Ysub(Y.dim(), std::vector<IntVec>(Y.points().begin(), Y.points().end() - 1));
    auto big = rc_relative(X, Y, 6), small = rc_relative(X, Ysub, 6);
    if (big.status != SeparationStatus::Found) continue;
    ASSERT_EQ(small.status, SeparationStatus::Found);
    EXPECT_LE(small.certificate->k, big.certificate->k);
  }
}

TEST(RcRelativeProperty, ScaleAndUnimodularInvariance) {
  Rng rng(73);
  for (int it = 0; it < 30; ++it) {
    auto [X, Y] = random_separation_instance(rng);
    auto base = rc_relative(X, Y, 6);
    if (base.status != SeparationStatus::Found) continue;
    auto s = rc_relative(scaled(X, 3), scaled(Y, 3), 6);
    ASSERT_EQ(s.status, SeparationStatus::Found);
    EXPECT_EQ(s.certificate->k, base.certificate->k);
    AffineMap f = random_affine_unimodular(X.dim(), rng);
    auto u = rc_relative(f(X), f(Y), 6);
    ASSERT_EQ(u.status, SeparationStatus::Found);
    EXPECT_EQ(u.certificate->k, base.certificate->k);
  }
}

TEST(EmitSepMilp, Counts) {
  PointSet sq = cube01(2);
  PointSet O = observers_parity(sq);
  MilpModel M = emit_sep_milp(sq, O, 3);
  EXPECT_EQ(M.rho, 1);
  EXPECT_EQ(M.bigM, 6);
  EXPECT_EQ(M.real_vars, 10u);
  EXPECT_EQ(M.binary_vars, 36u);
  EXPECT_EQ(M.rows, 4u * 3 + 12 + 36);
  EXPECT_NE(M.text.find("Maximize\n obj: mu"), std::string::npos);
  EXPECT_NE(M.text.find("s_11_2"), std::string::npos);
  EXPECT_NE(M.text.find(" -2 <= b_0 <= 2"), std::string::npos);
  EXPECT_THROW(emit_sep_milp(sq, PointSet(2), 3), std::invalid_argument);
}

TEST(EmitSepMilp, Deterministic) {
  PointSet X = simplex(2);
  PointSet Y(2, {{1, 1}, {-1, 0}});
  EXPECT_EQ(emit_sep_milp(X, Y, 2).text, emit_sep_milp(X, Y, 2).text);
}

TEST(VerifyRelaxation, Examples) {
  // triangle (-1/2,-1/2), (1/4,7/4), (7/4,1/4)
  HPolyhedron T(2);
  T.add({{Q(1), Q(1)}, Q(2), Rel::LE});
  T.add({{Q(-3), Q(1)}, Q(1), Rel::LE});
  T.add({{Q(1), Q(-3)}, Q(1), Rel::LE});
  EXPECT_TRUE(verify_relaxation(T, cube01(2)).ok);
  EXPECT_TRUE(verify_relaxation(convex_hull(simplex(3)), simplex(3)).ok);

  HPolyhedron H(1);
  H.add(make_ineq({-1}, 0));
  PointSet zero(1, {{0}});
  EXPECT_THROW(verify_relaxation(H, zero), UnboundedError);
  auto r = verify_relaxation(H, zero, std::pair<Int, Int>{-5, 5});
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.witness, (IntVec{1}));
}

TEST(VerifyRelaxation, CertificatesOfRandomSets) {
  Rng rng(79);
  for (int it = 0; it < 8; ++it) {
    PointSet X = random_lattice_convex(2, 4, 2, rng);
    if (!is_full_dimensional(X)) continue;
    auto O = observers_finite(X);
    ASSERT_TRUE(O.certificate.finite());
    auto r = rc_relative(X, O.observers, 8);
    ASSERT_EQ(r.status, SeparationStatus::Found);
    HPolyhedron P(2, r.certificate->system);
    ASSERT_TRUE(recession_is_trivial(P));
    EXPECT_TRUE(verify_relaxation(P, X).ok);
    EXPECT_GE(r.certificate->k, 3);
  }
}
