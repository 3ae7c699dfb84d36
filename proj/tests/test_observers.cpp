#include "rc/observers.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace rc;
using namespace rc::testing;

namespace {

PointSet square_observers_by_scan() { return brute_observers(cube01(2), {-2, -2}, {3, 3}); }

PointSet cube02(int d) { return box_points(IntVec(d, 0), IntVec(d, 2)); }

}  // namespace

TEST(IsObserver, Examples) {
  EXPECT_TRUE(is_observer(cube01(2), {2, 0}));
  EXPECT_FALSE(is_observer(cube01(2), {2, 3}));
  EXPECT_TRUE(is_observer(PointSet(1, {{0}}), {1}));
  EXPECT_THROW(is_observer(cube01(2), {1, 1}), std::invalid_argument);
}

TEST(IsObserver, AgreesWithBruteForce) {
  Rng rng(41);
  for (int it = 0; it < 10; ++it) {
    const int d = 2 + it % 2;
    PointSet X = random_lattice_convex(d, 3, 2, rng);
    for_each_box_point(IntVec(d, -2), IntVec(d, 4), [&](const IntVec& y) {
      if (!X.contains(y)) {
        EXPECT_EQ(is_observer(X, y), brute_is_observer(X, y));
      }
    });
  }
}

TEST(Parity, Examples) {
  EXPECT_TRUE(is_parity_complete(cube01(2)));
  EXPECT_FALSE(is_parity_complete(simplex(2)));
  EXPECT_TRUE(is_parity_complete(PointSet(1, {{0}, {1}, {2}})));
  // lower-dimensional: residues taken in aff(X) ∩ Z^d
  EXPECT_TRUE(is_parity_complete(PointSet(2, {{0, 0}, {1, 1}})));
  EXPECT_FALSE(is_parity_complete(PointSet(3, {{0, 0, 0}, {1, 1, 0}, {0, 1, 1}})));
}

TEST(ObserversParity, Examples) {
  EXPECT_EQ(observers_parity(PointSet(1, {{0}, {1}, {2}})), PointSet(1, {{-1}, {3}}));
  PointSet O = observers_parity(cube01(2));
  EXPECT_EQ(O.size(), 12u);
  EXPECT_EQ(O, square_observers_by_scan());
  try {
    observers_parity(simplex(2));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_EQ(e.condition, "NotParityComplete");
  }
}

TEST(InteriorLatticePoint, Examples) {
  EXPECT_TRUE(has_interior_lattice_point(cube02(2)));
  EXPECT_FALSE(has_interior_lattice_point(lattice_points(convex_hull(PointSet(2, {{0, 0}, {2, 0}, {0, 2}})))));
  EXPECT_FALSE(has_interior_lattice_point(simplex(3)));
  EXPECT_THROW(has_interior_lattice_point(PointSet(2, {{0, 0}, {1, 0}})), PreconditionError);
}

TEST(ObserverCone, ContainsOnlyItsObserver) {
  PointSet X = cube01(2);
  PointSet O = square_observers_by_scan();
  for (const auto& q : O) {
    Cone C = observer_cone(X, q);
    EXPECT_TRUE(C.contains(q));
    for (const auto& x : X) EXPECT_FALSE(C.contains(x));
    for (const auto& p : O) {
      if (p != q) {
        EXPECT_FALSE(C.contains(p));
      }
    }
    // q + (q − x) lies in the cone
    for (const auto& x : X) EXPECT_TRUE(C.contains(2 * q - x));
  }
}

TEST(ComplementPieces, SingleCone) {
  SemiLinearSet S{PointSet(2, {{0, 0}}), {}, {}};
  Cone C{{0, 0}, HPolyhedron(2), {}};
  C.constraints.add(make_ineq({-1, 0}, 0));
  C.constraints.add(make_ineq({0, -1}, 0));
  C.rows = integer_rows(C.constraints);
  S.cones.push_back(C);
  auto pieces = complement_pieces(S);
  ASSERT_EQ(pieces.size(), 2u);
  // {x1 < 0} and {x1 >= 0, x2 < 0}
  ASSERT_EQ(pieces[0].region.constraints.size(), 1u);
  EXPECT_EQ(pieces[0].region.constraints[0].a, to_q(IntVec{1, 0}));
  EXPECT_EQ(pieces[0].region.constraints[0].rel, Rel::LT);
  ASSERT_EQ(pieces[1].region.constraints.size(), 2u);
  EXPECT_EQ(pieces[1].region.constraints[1].rel, Rel::LT);
  EXPECT_FALSE(pieces[0].bounded);
  EXPECT_FALSE(pieces[1].bounded);
}

TEST(ComplementPieces, OppositeRays) {
  PointSet X(1, {{0}});
  SemiLinearSet S{X, {observer_cone(X, {1}), observer_cone(X, {-1})}, {}};
  auto pieces = complement_pieces(S);
  ASSERT_EQ(pieces.size(), 1u);
  EXPECT_TRUE(pieces[0].bounded);
  EXPECT_TRUE(pieces[0].points.empty());
  EXPECT_TRUE(pieces[0].region.contains(QVec{Q(0)}));
  EXPECT_FALSE(pieces[0].region.contains(QVec{Q(1)}));
}

TEST(ComplementPieces, SquareObserverConesLeaveBoundedPieces) {
  PointSet X = cube01(2);
  SemiLinearSet S{X, {}, {}};
  for (const auto& q : square_observers_by_scan()) S.cones.push_back(observer_cone(X, q));
  auto pieces = complement_pieces(S);
  ASSERT_FALSE(pieces.empty());
  for (const auto& p : pieces) {
    EXPECT_TRUE(p.bounded);
    EXPECT_TRUE(p.points.empty());
  }
  EXPECT_FALSE(find_uncovered(S, {}).has_value());
}

TEST(FindUncovered, DetectsMissingCone) {
  PointSet X = cube01(2);
  SemiLinearSet S{X, {}, {}};
  PointSet O = square_observers_by_scan();
  for (const auto& q : O)
    if (q != IntVec{2, 2}) S.cones.push_back(observer_cone(X, q));
  auto w = find_uncovered(S, {});
  ASSERT_TRUE(w.has_value());
  EXPECT_FALSE(S.contains(*w));
}

TEST(ObserversFinite, Examples) {
  auto sq = observers_finite(cube01(2));
  EXPECT_EQ(sq.certificate.verdict, Verdict::GeneralTerminated);
  EXPECT_EQ(sq.observers, observers_parity(cube01(2)));

  auto seg = observers_finite(PointSet(1, {{0}, {1}, {2}}));
  EXPECT_EQ(seg.certificate.verdict, Verdict::GeneralTerminated);
  EXPECT_EQ(seg.observers, PointSet(1, {{-1}, {3}}));

  auto tri = observers_finite(simplex(2));
  EXPECT_EQ(tri.certificate.verdict, Verdict::GeneralTerminated);
  EXPECT_EQ(tri.observers, brute_observers(simplex(2), {-3, -3}, {4, 4}));
}

TEST(ObserversFinite, BudgetExhaustedOnInfiniteObservers) {
  ObserverSearch opt;
  opt.budget = 1500;
  auto r = observers_finite(simplex(3), opt);
  EXPECT_EQ(r.certificate.verdict, Verdict::Unknown);
  for (const auto& y : r.observers) EXPECT_TRUE(is_observer(simplex(3), y));
}

TEST(ObserversFinite, RequiresFullDimension) {
  EXPECT_THROW(observers_finite(PointSet(2, {{0, 0}, {1, 0}})), PreconditionError);
  EXPECT_THROW(observers_finite(PointSet(1, {{0}, {2}})), PreconditionError);
}

TEST(WidthThreshold, Table) {
  // width 2 in Z^3: lattice points of [0,2]^3
  EXPECT_EQ(width_threshold_check(cube02(3)).verdict, Verdict::WidthAboveThreshold);
  EXPECT_EQ(width_threshold_check(box_points({0, 0, 0, 0}, {3, 3, 3, 3})).verdict, Verdict::WidthAboveThreshold);
  EXPECT_EQ(width_threshold_check(simplex(3)).verdict, Verdict::Unknown);
  EXPECT_EQ(width_threshold_check(box_points({0, 0, 0, 0}, {2, 2, 2, 2})).verdict, Verdict::Unknown);
  EXPECT_EQ(width_threshold_check(simplex(5)).verdict, Verdict::Unknown);
}

TEST(ObserversProperty, TwoDimensionalAgreesWithBoxScan) {
  // Certified output restricted to a box equals the box scan; every output point is an observer.
  Rng rng(43);
  for (int it = 0; it < 12; ++it) {
    PointSet X = random_lattice_convex(2, 3, 2, rng);
    if (!is_full_dimensional(X)) continue;
    auto r = observers_finite(X);
    ASSERT_EQ(r.certificate.verdict, Verdict::GeneralTerminated);
    auto [lo, hi] = bbox(X.points());
    Int diam = 0;
    for (int i = 0; i < 2; ++i) diam = std::max(diam, hi[i] - lo[i]);
    for (int i = 0; i < 2; ++i) {
      lo[i] -= 2 * diam + 1;
      hi[i] += 2 * diam + 1;
    }
    std::vector<IntVec> inside;
    for (const auto& y : r.observers) {
      EXPECT_TRUE(is_observer(X, y));
      bool in = true;
      for (int i = 0; i < 2; ++i) in = in && lo[i] <= y[i] && y[i] <= hi[i];
      if (in) inside.push_back(y);
    }
    EXPECT_EQ(PointSet(2, inside), brute_observers(X, lo, hi)) << it;
  }
}

TEST(ObserversProperty, ParityInclusionAndConvexity) {
  Rng rng(47);
  int tested = 0;
  for (int it = 0; it < 60 && tested < 8; ++it) {
    const int d = 2 + it % 2;
    PointSet X = random_lattice_convex(d, 4, 2, rng);
    if (!is_full_dimensional(X) || !is_parity_complete(X)) continue;
    ++tested;
    PointSet O = observers_parity(X);
    PointSet D = difference_body(X, 2);
    for (const auto& y : O) {
      EXPECT_TRUE(D.contains(y));
      EXPECT_TRUE(is_lattice_convex(X.with(y)));
    }
  }
  EXPECT_GT(tested, 0);
}

TEST(ObserversProperty, UnimodularEquivariance) {
  Rng rng(53);
  PointSet bases[] = {cube01(2), simplex(2), PointSet(2, {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}})};
  for (int it = 0; it < 9; ++it) {
    const PointSet& X = bases[it % 3];
    AffineMap f = random_affine_unimodular(2, rng);
    auto a = observers_finite(X).observers;
    auto b = observers_finite(f(X)).observers;
    EXPECT_EQ(f(a), b);
  }
}

TEST(ObserversProperty, NonHollowRunsTerminate) {
  PointSet X = cube02(2);
  auto r = compute_observers(X);
  ASSERT_TRUE(r.certificate.finite());
  EXPECT_EQ(r.observers, brute_observers(X, {-5, -5}, {7, 7}));
}
