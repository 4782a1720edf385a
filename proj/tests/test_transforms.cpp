#include <gtest/gtest.h>

#include "stratpoint/builtin_examples.hpp"
#include "stratpoint/random.hpp"
#include "stratpoint/transforms.hpp"

using namespace stratpoint;

namespace {

const CodeAction kAddStar{I0Action::add_m_star, PairAction::identity};
const CodeAction kStarPairs{I0Action::identity, PairAction::star_each_pair};

std::vector<std::pair<Vector, Vector>> samples(Rng& rng, const ProblemSize& s, int count) {
  std::vector<std::pair<Vector, Vector>> out;
  for (int k = 0; k < count; ++k)
    out.push_back({random_vector(rng, s.n, -3, 3), random_vector(rng, s.p, -3, 3)});
  return out;
}

}  // namespace

TEST(CodeAction, AddStarAndStarPairs) {
  CombinatorialCode code;
  code.m_le = 2;
  code.i0 = {1};
  code.pairs = {IndexPair{{1, 3}, {}}};
  const auto a = code_action_apply(kAddStar, code);
  EXPECT_FALSE(a.has_objective);
  EXPECT_EQ(a.m_le, 3u);
  EXPECT_EQ(a.i0, (std::set<int>{1, 3}));
  EXPECT_EQ(a.pairs, code.pairs);
  EXPECT_TRUE(a.mfcq_violated());

  CombinatorialCode mf;
  mf.m_le = 2;
  mf.has_objective = false;
  mf.i0 = {1, 2};
  mf.pairs = {IndexPair{{1, 2}, {}}};
  const auto b = code_action_apply(kStarPairs, mf);
  EXPECT_TRUE(b.has_objective);
  EXPECT_EQ(b.pairs, (std::set<IndexPair>{IndexPair{{1, 2, 3}, {}}}));
  EXPECT_TRUE(b.stationary());
}

TEST(CodeAction, InfeasibleCodesStayEmpty) {
  CombinatorialCode code;
  code.m_le = 1;
  code.feasible = false;
  EXPECT_TRUE(code_action_apply(kAddStar, code).i0.empty());
}

TEST(CodeAction, Composition) {
  EXPECT_EQ(compose(CodeAction{}, kStarPairs), kStarPairs);
  EXPECT_EQ(compose(kAddStar, kStarPairs), (CodeAction{I0Action::add_m_star, PairAction::star_each_pair}));
  EXPECT_THROW(compose(kStarPairs, kAddStar), std::invalid_argument);
  EXPECT_THROW(compose(kAddStar, kAddStar), std::invalid_argument);
}

TEST(Slack, HalfspaceProblem) {
  const auto t = slack_problem(halfspace_qp());
  const std::size_t n = 3, p = 0;
  EXPECT_EQ(t.problem.size, (ProblemSize{n, 1, 1, p}));
  EXPECT_EQ(t.problem.g[0], -Poly::x(n, p, 2));
  EXPECT_EQ(t.problem.h[0], Poly::x(n, p, 2) + Poly::x(n, p, 0));
  EXPECT_FALSE(t.code_action.has_value());
  const auto [x2, y2] = t.map_point({Rational(-1, 2), 4}, {});
  EXPECT_EQ(x2, (Vector{Rational(-1, 2), 4, Rational(1, 2)}));
}

TEST(Slack, FragmentMembership) {
  const Poly x = Poly::x(1, 1, 0), y = Poly::y(1, 1, 0);
  const auto frag = apply_slack(x * y - Poly::constant(1, 1, 1));
  Rng rng(2);
  std::vector<Vector> pts;
  for (int k = 0; k < 30; ++k) pts.push_back(random_vector(rng, 2, -3, 3));
  EXPECT_TRUE(verify_commutation(frag, pts).ok());
  EXPECT_TRUE(frag.member_after({2}, {1}));
  EXPECT_FALSE(frag.member_after({0}, {1}));
}

// The objective becomes an inequality f - y_new <= 0 with a fresh parameter.
TEST(Sp2mf, HalfspaceProblem) {
  const auto t = sp2mf(halfspace_qp());
  const std::size_t n = 2, p = 1;
  EXPECT_EQ(t.problem.size, (ProblemSize{n, 2, 0, p}));
  EXPECT_FALSE(t.problem.f.has_value());
  const Poly d = Poly::x(n, p, 0) - Poly::constant(n, p, 1);
  EXPECT_EQ(t.problem.g[1], d * d + Poly::x(n, p, 1) * Poly::x(n, p, 1) - Poly::y(n, p, 0));
  EXPECT_EQ(*t.code_action, kAddStar);
  const auto [x2, y2] = t.map_point({0, 0}, {});
  EXPECT_EQ(y2, (Vector{1}));
  const auto after = point_code(t.problem, x2, y2);
  EXPECT_EQ(after.code.i0, (std::set<int>{1, 2}));
  EXPECT_EQ(after.code.pairs, (std::set<IndexPair>{IndexPair{{1, 2}, {}}}));
}

TEST(Sp2mf, JetTarget) {
  JetPoint jet = JetPoint::zero(2, 1, 0);
  jet.a[0] = {1, 0};
  *jet.a_star = {-2, 0};
  const JetPoint mf = sp2mf_target(jet);
  EXPECT_FALSE(mf.has_objective());
  EXPECT_EQ(mf.m_le(), 2u);
  EXPECT_EQ(mf.a[1], (Vector{-2, 0}));
  EXPECT_EQ(compute_code(mf), code_action_apply(kAddStar, compute_code(jet)));
}

TEST(Mf2sp, DoubleWedge) {
  const auto t = mf2sp(double_wedge());
  const std::size_t n = 2, p = 0;
  EXPECT_EQ(t.problem.size, (ProblemSize{n, 2, 0, p}));
  EXPECT_EQ(*t.problem.f, Poly::x(n, p, 1));
  EXPECT_EQ(t.problem.g[0], Poly::x(n, p, 0) - Poly::x(n, p, 1));
  EXPECT_EQ(t.problem.g[1], -Poly::x(n, p, 0) - Poly::x(n, p, 1));
  EXPECT_EQ(*t.code_action, kStarPairs);
  ASSERT_EQ(t.provenance.size(), 3u);
  EXPECT_EQ(t.provenance[0].kind, ElementaryTransform::Kind::type1a);
  EXPECT_EQ(t.provenance[1].kind, ElementaryTransform::Kind::type3);
  EXPECT_EQ(t.provenance[2].kind, ElementaryTransform::Kind::type2);
  EXPECT_EQ(chain_action(t.provenance), kStarPairs);

  const auto at0 = point_code(t.problem, {0, 0}, {});
  EXPECT_TRUE(at0.code.stationary());
  EXPECT_EQ(at0.code.pairs, (std::set<IndexPair>{IndexPair{{1, 2, 3}, {}}}));
  const auto at1 = point_code(t.problem, {1, 0}, {});
  EXPECT_FALSE(at1.feasible);
}

TEST(Mf2sp, RequiresNoEqualities) {
  EXPECT_THROW(mf2sp(cone_example()), std::invalid_argument);
}

TEST(Phi, BaseParameterIsTheType2Map) {
  JetPoint jet = JetPoint::zero(2, 2, 0, false);
  jet.a = {{1, 2}, {-3, 0}};
  jet.alpha = {0, Rational(-1, 2)};
  EXPECT_EQ(phi_deform(jet, PhiParameter::base(2, 2)), t2_target(jet));
}

TEST(Phi, InverseAndDomain) {
  JetPoint jet = JetPoint::zero(1, 2, 0, false);
  jet.a = {{1}, {-1}};
  PhiParameter q{{Rational(-2), Rational(-1, 3)}, Rational(5), {Rational(3, 4)}};
  const JetPoint img = phi_deform(jet, q);
  const auto [back, q2] = phi_inverse(img);
  EXPECT_EQ(back, jet);
  EXPECT_EQ(q2.flatten(), q.flatten());
  EXPECT_EQ(compute_code(img), compute_code(t2_target(jet)));
  q.star_last = 0;
  EXPECT_THROW(phi_deform(jet, q), DomainError);
  q.star_last = 1;
  q.a_last[0] = 0;
  EXPECT_THROW(phi_deform(jet, q), DomainError);
}

TEST(Commutation, BuiltinsAndRandomProblems) {
  Rng rng(41);
  auto run = [&](const PolyProblem& prob) {
    EXPECT_TRUE(verify_commutation(slack_problem(prob), samples(rng, prob.size, 15)).ok());
    if (prob.f) {
      EXPECT_TRUE(verify_commutation(sp2mf(prob), samples(rng, prob.size, 15)).ok());
    }
    if (prob.size.m_eq == 0) {
      EXPECT_TRUE(verify_commutation(mf2sp(prob), samples(rng, prob.size, 15)).ok());
    }
  };
  for (const auto& ex : builtin_examples()) run(ex.problem);
  for (int t = 0; t < 25; ++t) {
    ProblemSize s{static_cast<std::size_t>(rng.uniform(1, 2)),
                  static_cast<std::size_t>(rng.uniform(0, 2)),
                  static_cast<std::size_t>(rng.uniform(0, 1)),
                  static_cast<std::size_t>(rng.uniform(0, 1))};
    run(random_problem(rng, s, rng.chance(1, 2)));
  }
}

// A deliberately wrong action must be caught by the sampled verification.
TEST(Commutation, DetectsWrongAction) {
  auto t = sp2mf(halfspace_qp());
  t.code_action = kStarPairs;
  Rng rng(43);
  const auto rep = verify_commutation(t, samples(rng, t.source.size, 20));
  EXPECT_FALSE(rep.ok());
}
