#include <gtest/gtest.h>

#include "stratpoint/builtin_examples.hpp"
#include "stratpoint/poly.hpp"
#include "stratpoint/random.hpp"

using namespace stratpoint;

TEST(Poly, ArithmeticAndEvaluation) {
  const Poly x1 = Poly::x(2, 1, 0), x2 = Poly::x(2, 1, 1), y1 = Poly::y(2, 1, 0);
  const Poly f = x1 * x1 * y1 - 3 * x2 + Poly::constant(2, 1, Rational(1, 2));
  EXPECT_EQ(f.eval(Vector{2, 1}, Vector{Rational(1, 4)}), Rational(1 - 3) + Rational(1, 2));
  EXPECT_TRUE((f - f).is_zero());
  EXPECT_EQ((x1 + x2) * (x1 - x2), x1 * x1 - x2 * x2);
}

TEST(Poly, ExactGradients) {
  const Poly x1 = Poly::x(2, 1, 0), x2 = Poly::x(2, 1, 1), y1 = Poly::y(2, 1, 0);
  const Poly f = x1 * x1 * x2 + y1 * x2;
  const auto g = grad_x(f);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], 2 * x1 * x2);
  EXPECT_EQ(g[1], x1 * x1 + y1);
  EXPECT_EQ(f.derivative(2), x2);  // d/dy1
}

TEST(Poly, EmbedMovesVariables) {
  const Poly x1 = Poly::x(1, 1, 0), y1 = Poly::y(1, 1, 0);
  const Poly f = x1 * y1;
  // (x1, y1) -> flat slots 0 and 2 of a (2, 1) space.
  const Poly g = f.embed(2, 1, {0, 2});
  EXPECT_EQ(g, Poly::x(2, 1, 0) * Poly::y(2, 1, 0));
  EXPECT_THROW(f.embed(1, 0, {0, 1}), DimensionError);
}

TEST(Poly, MismatchedSpacesAreRejected) {
  EXPECT_THROW(Poly::x(2, 0, 0) + Poly::x(1, 0, 0), DimensionError);
  EXPECT_THROW(Poly::x(2, 0, 0).eval(Vector{1}, Vector{}), DimensionError);
}

TEST(Poly, FloatAndExactEvaluationAgree) {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const Poly f = random_poly(rng, 2, 2, 4, 3, -3, 3);
    const Vector x = random_vector(rng, 2, -2, 2), y = random_vector(rng, 2, -2, 2);
    const auto xd = to_double(x), yd = to_double(y);
    EXPECT_NEAR(f.eval(xd, yd), to_double(f.eval(x, y)), 1e-9);
  }
}

TEST(Problem, ValidationCatchesSpaceMismatch) {
  PolyProblem prob = halfspace_qp();
  EXPECT_TRUE(validate_problem(prob).ok());
  prob.g.push_back(Poly::x(3, 0, 0));
  EXPECT_FALSE(validate_problem(prob).ok());
  EXPECT_THROW(require_valid(prob), DimensionError);
}

TEST(Problem, FeasibilityOfPoints) {
  const PolyProblem ex = cone_example();
  EXPECT_TRUE(is_feasible(ex, {1, 0}, {1, 0, -1}));
  EXPECT_FALSE(is_feasible(ex, {1, 0}, {1, 0, 0}));
  const PolyProblem hq = halfspace_qp();
  EXPECT_TRUE(is_feasible(hq, {0, 5}, {}));
  EXPECT_FALSE(is_feasible(hq, {Rational(1, 100), 0}, {}));
}
