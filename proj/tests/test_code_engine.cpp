#include <gtest/gtest.h>

#include "stratpoint/builtin_examples.hpp"
#include "stratpoint/code_engine.hpp"
#include "stratpoint/jet_normal_form.hpp"
#include "stratpoint/random.hpp"

using namespace stratpoint;

namespace {

IndexPair pr(std::set<int> i, std::set<int> j = {}) { return IndexPair{std::move(i), std::move(j)}; }

}  // namespace

// Hand KKT: grad f(0) = (-2, 0), a1 = (1, 0), so mu1 = 2 mu*.
TEST(CodeEngine, HalfspaceMinimizer) {
  const auto pc = point_code(halfspace_qp(), {0, 0}, {});
  EXPECT_TRUE(pc.feasible);
  EXPECT_EQ(pc.code.i0, (std::set<int>{1}));
  EXPECT_EQ(pc.code.pairs, (std::set<IndexPair>{pr({1, 2})}));
  EXPECT_TRUE(pc.code.stationary());
  EXPECT_FALSE(pc.code.mfcq_violated());
}

TEST(CodeEngine, ExampleVertexIsStationaryAndDegenerate) {
  const auto pc = point_code(cone_example(), {0, 0}, {0, 0, 0});
  EXPECT_TRUE(pc.feasible);
  EXPECT_TRUE(pc.code.i0.empty());
  EXPECT_EQ(pc.code.pairs, (std::set<IndexPair>{pr({1}), pr({}, {1})}));
  EXPECT_EQ(pc.code.sp_pairs().size(), 1u);
  EXPECT_EQ(pc.code.mf_pairs().size(), 1u);
}

TEST(CodeEngine, DoubleWedgeViolatesMfcq) {
  const auto pc = point_code(double_wedge(), {0}, {});
  EXPECT_FALSE(pc.code.has_objective);
  EXPECT_EQ(pc.code.pairs, (std::set<IndexPair>{pr({1, 2})}));
  EXPECT_TRUE(pc.code.mfcq_violated());
  EXPECT_FALSE(pc.code.stationary());
}

TEST(CodeEngine, InfeasibleJetHasEmptyCode) {
  JetPoint jet = JetPoint::zero(1, 1, 0);
  jet.a[0] = {1};
  jet.alpha[0] = 1;
  *jet.a_star = {-1};
  const auto code = compute_code(jet);
  EXPECT_FALSE(code.feasible);
  EXPECT_TRUE(code.i0.empty());
  EXPECT_TRUE(code.pairs.empty());
  EXPECT_FALSE(is_stationary(jet));
}

// a1 = e1, a2 = e2, a3 = -(e1 + e2), a* = -(e1 + e2), all active: the minimal
// supports are {1,2,3} (no objective) and {1,2,m*}.
TEST(CodeEngine, TwoMinimalPairsInThePlane) {
  JetPoint jet = JetPoint::zero(2, 3, 0);
  jet.a = {{1, 0}, {0, 1}, {-1, -1}};
  *jet.a_star = {-1, -1};
  const auto code = compute_code(jet);
  EXPECT_EQ(code.i0, (std::set<int>{1, 2, 3}));
  EXPECT_EQ(code.pairs, (std::set<IndexPair>{pr({1, 2, 3}), pr({1, 2, 4})}));
  EXPECT_EQ(code, brute_force_code(jet));
}

TEST(CodeEngine, EqualityMultiplierMaySignEitherWay) {
  JetPoint jet = JetPoint::zero(1, 0, 1);
  jet.b[0] = {1};
  *jet.a_star = {2};
  const auto code = compute_code(jet);
  EXPECT_EQ(code.pairs, (std::set<IndexPair>{pr({1}, {1})}));
  const auto cert = pair_certificate(jet, pr({1}, {1}));
  ASSERT_TRUE(cert);
  EXPECT_GT(cert->mu.at(1), 0);
  EXPECT_EQ(cert->lambda[0], -2 * cert->mu.at(1));
}

TEST(CodeEngine, InactiveConstraintsNeverEnterPairs) {
  JetPoint jet = JetPoint::zero(1, 2, 0);
  jet.a = {{1}, {-1}};
  jet.alpha = {0, -1};
  *jet.a_star = {1};
  const auto code = compute_code(jet);
  EXPECT_EQ(code.i0, (std::set<int>{1}));
  EXPECT_TRUE(code.pairs.empty());
}

TEST(CodeEngine, MatchesBruteForceOnRandomJets) {
  Rng rng(3);
  for (int t = 0; t < 150; ++t) {
    JetDraw d;
    d.lo = -2;
    d.hi = 2;
    d.objective = rng.chance(3, 4);
    const JetPoint jet = random_jet(rng, static_cast<std::size_t>(rng.uniform(1, 3)),
                                    static_cast<std::size_t>(rng.uniform(0, 4)),
                                    static_cast<std::size_t>(rng.uniform(0, 2)), d);
    EXPECT_EQ(compute_code(jet), brute_force_code(jet)) << "jet " << t;
  }
}

TEST(CodeEngine, ClosureIdentityOnRandomJets) {
  Rng rng(5);
  for (int t = 0; t < 150; ++t) {
    JetDraw d;
    d.lo = -1;
    d.hi = 1;
    const JetPoint jet = random_jet(rng, static_cast<std::size_t>(rng.uniform(1, 3)),
                                    static_cast<std::size_t>(rng.uniform(0, 3)),
                                    static_cast<std::size_t>(rng.uniform(0, 2)), d);
    const auto code = compute_code(jet);
    EXPECT_EQ(in_closure(jet), code.stationary() || code.mfcq_violated()) << "jet " << t;
  }
}

TEST(CodeEngine, PerturbationReachesStationarity) {
  // Equality with zero gradient and a nonzero objective gradient.
  JetPoint jet = JetPoint::zero(2, 0, 1);
  *jet.a_star = {1, -2};
  ASSERT_FALSE(is_stationary(jet));
  ASSERT_TRUE(compute_code(jet).mfcq_violated());
  for (Rational step : {Rational(1, 10), Rational(1, 1000000)}) {
    const JetPoint moved = perturb_toward_sp(jet, step);
    EXPECT_TRUE(is_stationary(moved));
    const bool along = moved.b[0] == Vector{-step, 2 * step} || moved.b[0] == Vector{step, -2 * step};
    EXPECT_TRUE(along);
  }
}

TEST(CodeEngine, PerturbationRejectsNonMfJets) {
  JetPoint jet = JetPoint::zero(1, 1, 0);
  jet.a[0] = {1};
  *jet.a_star = {1};
  EXPECT_THROW(perturb_toward_sp(jet, Rational(1, 10)), std::invalid_argument);
}

TEST(CodeEngine, PairsAreMinimal) {
  Rng rng(9);
  for (int t = 0; t < 80; ++t) {
    JetDraw d;
    d.lo = -1;
    d.hi = 1;
    d.zero_alpha_num = 3;
    d.zero_alpha_den = 4;
    const JetPoint jet = random_jet(rng, 2, static_cast<std::size_t>(rng.uniform(1, 4)),
                                    static_cast<std::size_t>(rng.uniform(0, 1)), d);
    const auto code = compute_code(jet);
    for (const auto& a : code.pairs)
      for (const auto& b : code.pairs)
        if (!(a == b)) {
          EXPECT_FALSE(a.subset_of(b)) << "jet " << t;
        }
  }
}

TEST(Jet, FlattenRoundTrip) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const JetPoint jet = random_jet(rng, 2, 2, 1);
    EXPECT_EQ(JetPoint::unflatten(jet.flatten(), 2, 2, 1, true), jet);
  }
}
