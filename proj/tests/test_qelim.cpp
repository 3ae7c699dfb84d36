#include "rc/qelim.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace rc;
using namespace rc::testing;

namespace {

BcliFormula yz(const std::string& body) { return parse_formula("(vars (y real) (z int)) (formula " + body + ")"); }

// Oracle for formulas in y and z: for y on a rational grid, every z in a window satisfies C.
bool grid_forall(const BcliFormula& C, Q lo, Q hi, int steps, Int window) {
  const int y = C.index_of("y"), z = C.index_of("z");
  for (int s = 0; s <= steps; ++s) {
    Q yv = lo + (hi - lo) * make_q(s) / make_q(steps);
    bool all = true;
    for (Int t = -window; t <= window && all; ++t) {
      std::vector<Q> val(C.vars.size(), Q(0));
      val[y] = yv;
      val[z] = make_q(t);
      all = evaluate(C.root, val);
    }
    if (all) return true;
  }
  return false;
}

}  // namespace

TEST(Parse, RoundTripAndErrors) {
  auto F = parse_formula("(vars (y1 real) (z int))\n(formula (and (>= (+ (* 1 y1) (* -1 z)) 0) (not (= z 3/2))))");
  ASSERT_EQ(F.vars.size(), 2u);
  EXPECT_EQ(F.vars[1].sort, Sort::Int);
  auto G = parse_formula(to_sexpr(F));
  EXPECT_EQ(G.vars, F.vars);
  EXPECT_EQ(to_sexpr(G), to_sexpr(F));
  try {
    parse_formula("(vars (y real))\n(formula (<= y w))");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line, 2);
    EXPECT_EQ(e.col, 16);
  }
  EXPECT_THROW(parse_formula("(vars (y real)) (formula (<= (* y y) 1))"), ParseError);
  EXPECT_THROW(parse_formula("(vars (y real)) (formula (<= y 1)"), ParseError);
  EXPECT_THROW(parse_formula("(vars (y complex)) (formula true)"), ParseError);
}

TEST(ToDnf, Examples) {
  auto F = parse_formula("(vars (a real) (b real)) (formula (not (and (>= a 0) (>= b 0))))");
  Dnf D = dnf_terms(F.root);
  ASSERT_EQ(D.size(), 2u);
  // ¬(a >= 0) is a > 0 written as a < 0: coefficient +1, strict
  EXPECT_EQ(D[0][0].rel, Rel::LT);
  EXPECT_EQ(D[0][0].coefficient(0), 1);
  EXPECT_EQ(D[0][0].rhs, 0);
  auto A = parse_formula("(vars (x real)) (formula (>= x 0))");
  Dnf DA = dnf_terms(A.root);
  ASSERT_EQ(DA.size(), 1u);
  EXPECT_EQ(DA[0][0].rel, Rel::LE);
  EXPECT_EQ(DA[0][0].coefficient(0), -1);
  // same variable set after conversion
  EXPECT_EQ(to_dnf(F).vars, F.vars);
}

TEST(ToDnf, PreservesTruth) {
  auto F = parse_formula(
      "(vars (a real) (b real)) (formula (or (and (< a 1) (not (= b a))) (not (or (>= a b) (<= b -1)))))");
  BcliFormula D = to_dnf(F);
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j) {
      std::vector<Q> v{make_q(i, 2), make_q(j, 2)};
      EXPECT_EQ(evaluate(F.root, v), evaluate(D.root, v));
    }
}

TEST(NormalizeZ, Examples) {
  auto F = yz("(> z y)");
  auto D = dnf_terms(F.root);
  auto N = normalize_z_bounds(D[0], F.index_of("z"), F);
  ASSERT_EQ(N.lower.size(), 1u);
  EXPECT_TRUE(N.upper.empty());
  ASSERT_EQ(F.vars.size(), 3u);
  EXPECT_EQ(F.vars[2].name, "u1");
  EXPECT_EQ(N.lower[0].coef.at(0), 1);
  EXPECT_EQ(N.lower[0].coef.at(2), 1);
  ASSERT_EQ(N.free.size(), 1u);
  EXPECT_EQ(N.free[0].rel, Rel::LT);

  auto G = yz("(and (<= z y) (>= y 0))");
  auto ND = normalize_z_bounds(dnf_terms(G.root)[0], G.index_of("z"), G);
  EXPECT_EQ(ND.upper.size(), 1u);
  EXPECT_EQ(ND.free.size(), 1u);
  EXPECT_EQ(G.vars.size(), 2u);
}

TEST(CoverFormula, ChainCounts) {
  auto count = [](const std::string& body) {
    auto F = parse_formula("(vars (y1 real) (y2 real) (y3 real) (y4 real) (z int)) (formula " + body + ")");
    std::vector<NormalDisjunct> N;
    for (const auto& c : dnf_terms(F.root)) N.push_back(normalize_z_bounds(c, F.index_of("z"), F));
    CoverStats st;
    build_cover_formula(N, F, &st);
    return st;
  };
  EXPECT_EQ(count("(<= z y1)").chains, 0u);
  EXPECT_EQ(count("(or (<= z y1) (>= z y2))").chains, 1u);
  // left, right and one finite interval: chains (L,R) and (L,F,R)
  EXPECT_EQ(count("(or (<= z y1) (>= z y2) (and (>= z y3) (<= z y4)))").chains, 2u);
  // two finite intervals: L R, L F1 R, L F2 R, L F1 F2 R, L F2 F1 R
  EXPECT_EQ(count("(or (<= z y1) (>= z y2) (and (>= z y3) (<= z y4)) (and (>= z y1) (<= z y2)))").chains, 5u);
  EXPECT_EQ(count("(or (<= y1 0) (<= z y2))").z_free, 1u);
}

TEST(FourierMotzkin, Examples) {
  HPolyhedron P(2);  // (x, y)
  P.add(make_ineq({-1, 0}, 0));
  P.add(make_ineq({1, -1}, 0));
  auto R = fourier_motzkin(P, 0);
  ASSERT_EQ(R.constraints.size(), 1u);
  EXPECT_EQ(R.constraints[0], make_ineq({0, -1}, 0));

  HPolyhedron S(2);
  S.add(make_ineq({-1, 0}, 0, Rel::LT));
  S.add(make_ineq({1, -1}, 0, Rel::LT));
  auto RS = fourier_motzkin(S, 0);
  ASSERT_EQ(RS.constraints.size(), 1u);
  EXPECT_EQ(RS.constraints[0], make_ineq({0, -1}, 0, Rel::LT));

  HPolyhedron E(2);
  E.add(make_ineq({-1, 1}, 0));
  E.add(make_ineq({1, -1}, -1));
  EXPECT_FALSE(is_feasible(fourier_motzkin(E, 0)));
}

TEST(Ilp, Examples) {
  HPolyhedron A(1);
  A.add({{Q(2)}, Q(1), Rel::EQ});
  EXPECT_FALSE(ilp_feasible(A));
  HPolyhedron B(2);
  B.add(make_ineq({1, 1}, 3, Rel::EQ));
  B.add(make_ineq({-1, 0}, 0));
  B.add(make_ineq({0, -1}, 0));
  auto w = ilp_feasible(B);
  ASSERT_TRUE(w);
  EXPECT_EQ((*w)[0] + (*w)[1], 3);
  HPolyhedron C(2);
  C.add(make_ineq({3, 5}, 7, Rel::EQ));
  C.add(make_ineq({-1, 0}, 0));
  C.add(make_ineq({0, -1}, 0));
  EXPECT_FALSE(ilp_feasible(C));
}

TEST(Ilp, AgreesWithBoxSearch) {
  Rng rng(83);
  std::uniform_int_distribution<Int> c(-4, 4);
  for (int it = 0; it < 60; ++it) {
    HPolyhedron P = box(2, -3, 3);
    for (int r = 0; r < 3; ++r) P.add(make_ineq({c(rng), c(rng)}, c(rng)));
    P.constraints.erase(P.constraints.begin(), P.constraints.begin() + 4 * (it % 2));
    auto w = ilp_feasible(P);
    HPolyhedron boxed = P.intersected(box(2, -3, 3));
    bool brute = !brute_lattice_points(boxed, {-3, -3}, {3, 3}).empty();
    if (it % 2 == 0) {
      EXPECT_EQ(w.has_value(), brute);
    } else if (brute) {
      EXPECT_TRUE(w);
    }
    if (w) {
      EXPECT_TRUE(P.contains(*w));
    }
  }
}

TEST(DecideForallZ, Examples) {
  EXPECT_TRUE(decide_forall_z(yz("(or (<= z y) (>= z y))")));
  EXPECT_FALSE(decide_forall_z(yz("(<= z y)")));
  EXPECT_FALSE(decide_forall_z(yz("(or (<= z y) (>= z (+ y 2)))")));
  EXPECT_TRUE(decide_forall_z(yz("(or (<= z y) (>= z (+ y 1)))")));
}

TEST(DecideForallZ, GridOracle) {
  // y-region is [-3, 3] for each formula; windows cover all bound structure
  const char* cases[] = {
      "(or (<= z y) (>= z (+ y 1)))",
      "(or (< z y) (> z (+ y 1)))",
      "(or (< z y) (>= z (+ y 1)))",
      "(or (<= z (- y 1)) (and (>= z y) (<= z (+ y 1/2))) (>= z (+ y 1)))",
      "(or (< z (- y 1)) (and (> z (- y 1)) (< z y)) (> z y))",
      "(and (>= y 2) (or (< z y) (>= z 3)))",
      "(and (>= y 2) (or (< z y) (> z 3)))",
      "(or (<= (* 2 z) y) (>= (* 2 z) (+ y 2)))",
      "(or (<= (* 2 z) y) (>= (* 2 z) (+ y 3)))",
      "(not (and (> z (- y 1/2)) (< z (+ y 1/2))))",
  };
  for (const char* body : cases) {
    auto C = parse_formula(std::string("(vars (y real) (z int)) (formula (and (>= y -3) (<= y 3) ") + body + "))");
    EXPECT_EQ(decide_forall_z(C), grid_forall(C, Q(-3), Q(3), 240, 12)) << body;
  }
}

TEST(DecideForallZ, InvariantUnderPermutationAndRenaming) {
  auto a = parse_formula("(vars (y real) (z int)) (formula (or (< z y) (and (>= z y) (<= z (+ y 1/2))) (> z (+ y 1/3))))");
  auto b = parse_formula("(vars (q real) (w int)) (formula (or (> w (+ q 1/3)) (< w q) (and (<= w (+ q 1/2)) (>= w q))))");
  EXPECT_EQ(decide_forall_z(a, "z"), decide_forall_z(b, "w"));
}

TEST(FourierMotzkinProperty, RandomSystemsAgreeWithLp) {
  Rng rng(89);
  std::uniform_int_distribution<Int> c(-3, 3), rows(2, 6), coin(0, 3);
  for (int it = 0; it < 100; ++it) {
    HPolyhedron P(3);
    const Int m = rows(rng);
    for (Int r = 0; r < m; ++r)
      P.add(make_ineq({c(rng), c(rng), c(rng)}, c(rng), coin(rng) == 0 ? Rel::LT : Rel::LE));
    HPolyhedron Q1 = fourier_motzkin(P, 0);
    EXPECT_EQ(is_feasible(P), is_feasible(Q1)) << it;
    // projection of a feasible point is feasible
    if (auto x = feasible_point(P)) {
      EXPECT_TRUE(Q1.contains(*x));
    }
  }
}

TEST(LineFamily, NonParallel) {
  EXPECT_THROW(make_line_family({{{1, 0}, {1, 0}}, {{0, 1}, {0, 1}}}, PointSet(2)), NonParallelError);
  EXPECT_THROW(make_line_family({{{1, 0}, {0, 1}}, {{1, 5}, {0, -2}}}, PointSet(2)), std::invalid_argument);
  auto L = make_line_family({{{1, 0}, {0, 2}}, {{-1, 0}, {0, -1}}}, PointSet(2));
  EXPECT_EQ(L.u, (IntVec{0, 1}));
}

TEST(RcWithParallelLines, Examples) {
  auto L1 = make_line_family({{{1, 0}, {0, 1}}, {{-1, 0}, {0, 1}}}, PointSet(2));
  PointSet X1(2, {{0, 0}});
  auto r1 = rc_with_parallel_lines(X1, L1, 4);
  ASSERT_EQ(r1.status, SeparationStatus::Found);
  EXPECT_EQ(r1.k, 2);
  EXPECT_TRUE(check_lines_certificate(X1, L1, r1.system));

  auto L2 = make_line_family({{{0, 1}, {1, 0}}, {{0, -1}, {1, 0}}}, PointSet(2, {{-1, 0}, {2, 0}}));
  PointSet X2(2, {{0, 0}, {1, 0}});
  auto r2 = rc_with_parallel_lines(X2, L2, 4);
  ASSERT_EQ(r2.status, SeparationStatus::Found);
  EXPECT_EQ(r2.k, 3);
  EXPECT_TRUE(check_lines_certificate(X2, L2, r2.system));

  auto r3 = rc_with_parallel_lines(X2, L2, 2);
  EXPECT_EQ(r3.status, SeparationStatus::KmaxExceeded);
}

TEST(RcWithParallelLines, TruncationIsALowerBound) {
  struct Inst {
    PointSet X;
    LineFamily L;
    bool stabilizes;
  };
  std::vector<Inst> insts = {
      {PointSet(2, {{0, 0}}), make_line_family({{{1, 0}, {0, 1}}, {{-1, 0}, {0, 1}}}, PointSet(2)), true},
      // every truncation is cut by the wedge -x1 - (R+1)x2 <= 0, x1 + (R+2)x2 <= 1
      {PointSet(2, {{0, 0}, {1, 0}}),
       make_line_family({{{0, 1}, {1, 0}}, {{0, -1}, {1, 0}}}, PointSet(2, {{-1, 0}, {2, 0}})), false},
      {PointSet(2, {{0, 0}, {1, 0}, {0, 1}}), make_line_family({{{2, 0}, {1, -1}}}, PointSet(2, {{-1, 0}, {0, -1}})),
       true},
  };
  for (const auto& [X, L, stabilizes] : insts) {
    auto full = rc_with_parallel_lines(X, L, 5);
    ASSERT_EQ(full.status, SeparationStatus::Found);
    for (Int R = 0; R <= 5; ++R) {
      auto t = rc_relative(X, truncate_lines(L, R), 6);
      ASSERT_EQ(t.status, SeparationStatus::Found);
      EXPECT_LE(t.certificate->k, full.k);
      if (R >= 3) {
        EXPECT_EQ(t.certificate->k == full.k, stabilizes) << R;
      }
    }
  }
}

TEST(LineCutEverywhere, Examples) {
  std::vector<LinearInequality> s = {make_ineq({1, 0}, 0), make_ineq({-1, 0}, 0)};
  EXPECT_FALSE(line_cut_everywhere(s, {0, 1}, {1, 0}));
  s = {{to_q(IntVec{1, 0}), make_q(1, 2)}, {to_q(IntVec{-1, 0}), make_q(-3, 4)}};
  // violated for x > 1/2 and x < 3/4: all integers
  EXPECT_TRUE(line_cut_everywhere(s, {0, 1}, {1, 0}));
}
