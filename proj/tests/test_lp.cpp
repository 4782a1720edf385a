#include <gtest/gtest.h>

#include "stratpoint/exact_lp.hpp"
#include "stratpoint/random.hpp"

using namespace stratpoint;

namespace {

void nonnegative(LpProblem& lp) {
  for (std::size_t k = 0; k < lp.var_count; ++k) {
    Vector e(lp.var_count, Rational(0));
    e[k] = 1;
    lp.add_ge(e, 0);
  }
}

}  // namespace

// Beale's cycling example (maximization form). Textbook pivoting with the
// largest-coefficient rule cycles on it; Bland's rule must terminate.
TEST(Lp, BealeCyclingInstanceTerminates) {
  LpProblem lp(4);
  lp.objective = {Rational(3, 4), -20, Rational(1, 2), -6};
  lp.add_le({Rational(1, 4), -8, -1, 9}, 0);
  lp.add_le({Rational(1, 2), -12, Rational(-1, 2), 3}, 0);
  lp.add_le({0, 0, 1, 0}, 1);
  nonnegative(lp);
  const auto r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(*r.value, Rational(5, 4));
  EXPECT_TRUE(lp_satisfies(lp, *r.solution));
}

TEST(Lp, ChvatalDegenerateInstance) {
  LpProblem lp(4);
  lp.objective = {10, -57, -9, -24};
  lp.add_le({Rational(1, 2), Rational(-11, 2), Rational(-5, 2), 9}, 0);
  lp.add_le({Rational(1, 2), Rational(-3, 2), Rational(-1, 2), 1}, 0);
  lp.add_le({1, 0, 0, 0}, 1);
  nonnegative(lp);
  const auto r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(*r.value, Rational(1));
  EXPECT_EQ(*r.solution, (Vector{1, 0, 1, 0}));
}

TEST(Lp, InfeasibleAndUnbounded) {
  LpProblem inf(1);
  inf.add_le({1}, -1);
  inf.add_ge({1}, 1);
  EXPECT_EQ(lp_solve(inf).status, LpStatus::infeasible);

  LpProblem unb(2);
  unb.objective = {1, 1};
  unb.add_le({1, -1}, 0);
  EXPECT_EQ(lp_solve(unb).status, LpStatus::unbounded);
}

TEST(Lp, EqualitiesAndRedundantRows) {
  LpProblem lp(2);
  lp.objective = {1, 0};
  lp.add_eq({1, 1}, 2);
  lp.add_eq({2, 2}, 4);  // redundant copy
  lp.add_le({1, 0}, Rational(3, 2));
  const auto r = lp_solve(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(*r.solution, (Vector{Rational(3, 2), Rational(1, 2)}));
}

TEST(Lp, FeasibilityPhase) {
  const auto r = lp_feasible({{1, 1}}, {1}, {{-1, 0}, {0, -1}}, {0, 0}, 2);
  ASSERT_EQ(r.status, LpStatus::optimal);
  const Vector& v = *r.solution;
  EXPECT_EQ(v[0] + v[1], Rational(1));
  EXPECT_GE(v[0], 0);
  EXPECT_GE(v[1], 0);
  EXPECT_EQ(lp_feasible({{1}}, {1}, {{1}}, {0}, 1).status, LpStatus::infeasible);
}

// Strong duality on random bounded instances: max c^T x s.t. A x <= b with
// box rows, against the dual min b^T u, A^T u = c, u >= 0 solved as an LP.
TEST(Lp, StrongDualityOnRandomInstances) {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    const auto n = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto m = static_cast<std::size_t>(rng.uniform(0, 4));
    Matrix a;
    Vector b;
    for (std::size_t i = 0; i < m; ++i) {
      a.push_back(random_vector(rng, n, -3, 3));
      b.push_back(rng.integer(0, 4));  // x = 0 is feasible
    }
    for (std::size_t k = 0; k < n; ++k) {
      Vector e(n, Rational(0));
      e[k] = 1;
      a.push_back(e);
      b.push_back(5);
      e[k] = -1;
      a.push_back(e);
      b.push_back(5);
    }
    LpProblem primal(n);
    primal.objective = random_vector(rng, n, -3, 3);
    for (std::size_t i = 0; i < a.size(); ++i) primal.add_le(a[i], b[i]);
    const auto p = lp_solve(primal);
    ASSERT_EQ(p.status, LpStatus::optimal);

    LpProblem dual(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) dual.objective[i] = -b[i];
    for (std::size_t k = 0; k < n; ++k) {
      Vector col(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) col[i] = a[i][k];
      dual.add_eq(col, primal.objective[k]);
    }
    nonnegative(dual);
    const auto d = lp_solve(dual);
    ASSERT_EQ(d.status, LpStatus::optimal);
    EXPECT_EQ(*p.value, -*d.value) << "instance " << t;
  }
}
