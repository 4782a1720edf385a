#include <gtest/gtest.h>

#include "stratpoint/builtin_examples.hpp"
#include "stratpoint/jet_normal_form.hpp"
#include "stratpoint/qp_solver.hpp"
#include "stratpoint/random.hpp"

using namespace stratpoint;

TEST(NormalForm, ExampleVertex) {
  const JetPoint jet = jet_sp(cone_example(), {0, 0}, {0, 0, 0});
  const auto nf = build_normal_form(jet);
  EXPECT_EQ(nf.sqp.size.n, 2u);
  EXPECT_EQ(nf.sqp.size.m_le, 0u);
  EXPECT_EQ(nf.sqp.size.m_eq, 1u);
  EXPECT_EQ(nf.sqp.size.p, 3u);  // (b1, beta1)
  EXPECT_EQ(nf.y_bar, (Vector{0, 0, 0}));
  EXPECT_EQ(nf.jet_check, jet);
  EXPECT_EQ(abs(normal_form_jacobian(jet).determinant), Rational(1));
}

TEST(NormalForm, ZeroJetGivesZeroCenter) {
  const JetPoint jet = JetPoint::zero(3, 2, 1);
  const auto nf = build_normal_form(jet);
  EXPECT_EQ(nf.sqp.c, (Vector{0, 0, 0}));
  EXPECT_EQ(nf.jet_check, jet);
}

TEST(NormalForm, JetOfGeneralPoint) {
  // f = (x1-1)^2 + x2^2 at (0, 0): grad f = (-2, 0), so c = (2, 0).
  const JetPoint jet = jet_sp(halfspace_qp(), {0, 0}, {});
  EXPECT_EQ(*jet.a_star, (Vector{-2, 0}));
  EXPECT_EQ(jet.a[0], (Vector{1, 0}));
  EXPECT_EQ(jet.alpha[0], Rational(0));
  const auto nf = build_normal_form(jet);
  EXPECT_EQ(nf.sqp.c, (Vector{2, 0}));
  EXPECT_EQ(nf.y_bar, (Vector{1, 0, 0}));
}

// At a stationary point with beta = 0 the origin is the unique minimizer of
// the normal form at y_bar and carries the same code.
TEST(NormalForm, StationaryPointMapsToOrigin) {
  const PolyProblem hq = halfspace_qp();
  {
    const auto pc = point_code(hq, {0, 0}, {});
    ASSERT_TRUE(pc.code.stationary());
    const auto nf = build_normal_form(pc.jet);
    const auto sm = stationary_map(nf.sqp, nf.y_bar);
    ASSERT_EQ(sm.status, QpStatus::optimal);
    EXPECT_EQ(sm.x, (Vector{0, 0}));
    EXPECT_EQ(sm.code, pc.code);
  }
  Rng rng(17);
  int checked = 0;
  for (int t = 0; t < 300 && checked < 40; ++t) {
    JetDraw d;
    d.lo = -2;
    d.hi = 2;
    d.zero_alpha_num = 3;
    d.zero_alpha_den = 4;
    d.zero_beta_num = 1;
    d.zero_beta_den = 1;
    const JetPoint jet = random_jet(rng, 2, 3, static_cast<std::size_t>(rng.uniform(0, 1)), d);
    const auto code = compute_code(jet);
    if (!code.stationary()) continue;
    ++checked;
    const auto nf = build_normal_form(jet);
    const auto sm = stationary_map(nf.sqp, nf.y_bar);
    ASSERT_EQ(sm.status, QpStatus::optimal);
    EXPECT_EQ(sm.x, (Vector{0, 0}));
    EXPECT_EQ(sm.code, code);
  }
  EXPECT_GE(checked, 20);
}

TEST(NormalForm, RoundTripAndUnimodularAcrossSizes) {
  Rng rng(23);
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t m_le = 0; m_le <= 3; ++m_le)
      for (std::size_t m_eq = 0; m_eq <= 2; ++m_eq) {
        const JetPoint jet = random_jet(rng, n, m_le, m_eq);
        const auto nf = build_normal_form(jet);
        EXPECT_EQ(nf.jet_check, jet);
        const auto jac = normal_form_jacobian(jet);
        EXPECT_EQ(abs(jac.determinant), Rational(1));
        EXPECT_TRUE(jac.upper_triangular);
      }
}

TEST(NormalForm, RequiresObjective) {
  EXPECT_THROW(build_normal_form(JetPoint::zero(1, 1, 0, false)), std::invalid_argument);
}

TEST(Sqp, AffineRestrictionAndProblemView) {
  const auto sqp = find_builtin_sqp("halfspace-sqp-2")->sqp;
  EXPECT_EQ(sqp.size.p, 2u);
  const JetPoint at = sqp.constraints_at({Rational(-1, 2), Rational(1, 4)});
  EXPECT_EQ(at.a[0], (Vector{1, 0}));
  EXPECT_EQ(at.alpha[0], Rational(-1, 2));
  EXPECT_EQ(at.a[1], (Vector{-1, 0}));
  EXPECT_EQ(at.alpha[1], Rational(1, 4));
  const PolyProblem prob = sqp.to_problem();
  EXPECT_EQ(prob.g[0].eval(Vector{1, 0}, Vector{2, 0}), Rational(3));
  EXPECT_EQ(prob.f->eval(Vector{1, 0}, Vector{0, 0}), Rational(0));
  EXPECT_THROW(sqp.constraints_at({1}), DimensionError);
}
