#include <gtest/gtest.h>

#include "abcu/decide.hpp"
#include "abcu/reductions.hpp"
#include "support/oracles.hpp"

namespace abcu {
namespace {

constexpr Candidate a = 0, b = 1, c = 2;

Model certain(std::size_t m, ApprovalProfile profile) {
  const std::size_t n = profile.size();
  return JointModel{n, m, {{Probability::one(), std::move(profile)}}};
}

ThreeValuedModel all_unknown(std::size_t n, std::size_t m) {
  return {n, m, std::vector<std::vector<Tri>>(n, std::vector<Tri>(m, Tri::unknown))};
}

void expect_plausible(const Model& model, const PlausibleProfile& pp) {
  EXPECT_FALSE(pp.prob.is_zero());
  EXPECT_EQ(profile_probability(model, pp.profile), pp.prob);
}

TEST(IsPossJr, JointScanReturnsFirstWitness) {
  const Instance inst(2, 2, 1);
  JointModel joint{2, 2, {{Probability(1, 2), {{a}, {a}}}, {Probability(1, 2), {{b}, {b}}}}};
  auto r = is_poss_jr(inst, joint, {a});
  ASSERT_TRUE(r.answer);
  EXPECT_EQ(r.profile->profile, joint.entries[0].profile);
  EXPECT_EQ(r.method, DecisionMethod::poly_special_case);
}

TEST(IsPossJr, CertainCpReducesToDeterministicCheck) {
  const Instance inst(4, 3, 2);
  CandidateProbModel cp{4, 3, std::vector<std::vector<Probability>>(4, std::vector<Probability>(3))};
  for (std::size_t i = 0; i < 4; ++i) cp.p[i][i < 2 ? a : b] = Probability::one();
  EXPECT_FALSE(is_poss_jr(inst, cp, {a, c}).answer);
  EXPECT_TRUE(is_poss_jr(inst, cp, {a, b}).answer);
}

TEST(IsPossJr, SizeError) {
  EXPECT_THROW(is_poss_jr(Instance(2, 2, 1), all_unknown(2, 2), {a, b}), PreconditionError);
  EXPECT_THROW(is_poss_jr(Instance(3, 2, 1), all_unknown(2, 2), {a}), InputError);
}

TEST(ExistsPossJr, AlwaysYes) {
  auto r = exists_poss_jr(Instance(2, 1, 1), all_unknown(2, 1));
  EXPECT_TRUE(r.answer);
  EXPECT_EQ(r.committee, Committee{0});
  EXPECT_EQ(r.method, DecisionMethod::trivial);

  const Instance inst(4, 3, 2);
  auto model = certain(3, {{a}, {a}, {b}, {b}});
  auto greedy = exists_poss_jr(inst, model);
  EXPECT_EQ(greedy.committee, (Committee{a, b}));
}

TEST(IsNecJr, LotterySingleSetReading) {
  const Instance inst(2, 2, 1);
  LotteryModel lottery{2, 2, {{{Probability::one(), {a}}}, {{Probability(1, 2), {a, b}}, {Probability(1, 2), {b}}}}};
  auto r = is_nec_jr(inst, lottery, {a});
  EXPECT_TRUE(r.answer);
  EXPECT_EQ(r.method, DecisionMethod::poly_special_case);
  EXPECT_TRUE(oracle::necessarily(Axiom::jr, inst, lottery, {a}));
}

// Each voter may approve b, but only through a set that also contains w's
// member a; their sets missing w do not contain b. Counting b per candidate
// rather than per set would report a violation that no profile realizes.
TEST(IsNecJr, LotteryLooserReadingWouldDisagree) {
  const Instance inst(2, 4, 1);
  LotteryModel lottery{2, 4,
                       {{{Probability(1, 2), {a, b}}, {Probability(1, 2), {c}}},
                        {{Probability(1, 2), {a, b}}, {Probability(1, 2), {3}}}}};
  EXPECT_TRUE(oracle::necessarily(Axiom::jr, inst, lottery, {a}));
  EXPECT_TRUE(is_nec_jr(inst, lottery, {a}).answer);
}

TEST(IsNecJr, InteriorCpRefutedWithWitness) {
  SplitMix64 rng(5);
  const Instance inst(3, 3, 2);
  Model cp = oracle::random_interior_cp(rng, 3, 3);
  auto r = is_nec_jr(inst, cp, {a, b});
  ASSERT_FALSE(r.answer);
  ASSERT_TRUE(r.profile && r.violation);
  expect_plausible(cp, *r.profile);
  EXPECT_EQ(r.violation->common, CandidateSet{c});
  EXPECT_FALSE(is_jr(inst, r.profile->profile, {a, b}).holds);
}

TEST(IsNecJr, SingleJointEntryIsDeterministic) {
  const Instance inst(4, 3, 2);
  auto model = certain(3, {{a}, {a}, {b}, {b}});
  EXPECT_FALSE(is_nec_jr(inst, model, {a, c}).answer);
  EXPECT_TRUE(is_nec_jr(inst, model, {a, b}).answer);
}

TEST(ExistsNecJr, SingletonLotteryMandatoryCandidates) {
  const Instance inst(4, 3, 2);
  LotteryModel lottery{4, 3,
                       {{{Probability::one(), {a}}},
                        {{Probability(1, 2), {a}}, {Probability(1, 2), {b}}},
                        {{Probability::one(), {b}}},
                        {{Probability::one(), {c}}}}};
  auto r = exists_nec_jr(inst, lottery);
  ASSERT_TRUE(r.answer);
  EXPECT_EQ(r.committee, (Committee{a, b}));
  EXPECT_EQ(r.method, DecisionMethod::poly_special_case);
  EXPECT_EQ(oracle::first_necessary(Axiom::jr, inst, lottery), (Committee{a, b}));
}

TEST(ExistsNecJr, InteriorCpNeedsFullCommittee) {
  SplitMix64 rng(9);
  Model cp = oracle::random_interior_cp(rng, 2, 3);
  EXPECT_FALSE(exists_nec_jr(Instance(2, 3, 2), cp).answer);
  auto full = exists_nec_jr(Instance(2, 3, 3), cp);
  EXPECT_TRUE(full.answer);
  EXPECT_EQ(full.committee, (Committee{0, 1, 2}));
}

TEST(ExistsNecJr, DeterministicJointFindsJrCommittee) {
  const Instance inst(4, 3, 2);
  auto r = exists_nec_jr(inst, certain(3, {{a}, {a}, {b}, {b}}));
  ASSERT_TRUE(r.answer);
  EXPECT_EQ(r.committee, (Committee{a, b}));
  EXPECT_EQ(r.method, DecisionMethod::enumeration);
}

TEST(AxiomDecisions, CertainAllAbProfile) {
  const Instance inst(4, 3, 2);
  auto model = certain(3, {{a, b}, {a, b}, {a, b}, {a, b}});
  EXPECT_TRUE(is_poss_axiom(inst, model, {a, b}, Axiom::ejr).answer);
  EXPECT_FALSE(is_poss_axiom(inst, model, {a, c}, Axiom::ejr).answer);
  EXPECT_FALSE(is_nec_axiom(inst, model, {a, c}, Axiom::pjr).answer);
  auto ex = exists_nec_axiom(inst, model, Axiom::ejr);
  ASSERT_TRUE(ex.answer);
  EXPECT_EQ(ex.committee, (Committee{a, b}));
}

TEST(AxiomDecisions, AllUnknownHasNoNecessaryEjrCommittee) {
  EXPECT_FALSE(exists_nec_axiom(Instance(2, 2, 1), all_unknown(2, 2), Axiom::ejr).answer);
}

TEST(AxiomDecisions, BudgetErrorOnLargeModels) {
  SolveOptions tight;
  tight.budget = Budget{16, 16};
  EXPECT_THROW(is_nec_axiom(Instance(2, 3, 1), all_unknown(2, 3), {a}, Axiom::ejr, tight), BudgetError);
  // The polynomial JR path does not enumerate and is unaffected.
  EXPECT_NO_THROW(is_nec_jr(Instance(2, 3, 1), all_unknown(2, 3), {a}, tight));
}

// ---------------------------------------------------------------------------
// Oracle agreement on random models
// ---------------------------------------------------------------------------

class DecideOracle : public ::testing::TestWithParam<ModelKind> {};

TEST_P(DecideOracle, EveryCommitteeAgreesWithEnumeration) {
  SplitMix64 rng(1000 + static_cast<std::uint64_t>(GetParam()));
  SolveOptions forced;
  forced.force_enumeration = true;
  for (int iter = 0; iter < 120; ++iter) {
    auto [inst, model] = oracle::random_model(rng, GetParam(), 4, 4);
    const auto dist = oracle::distribution(model);
    for_each_committee(inst, Budget{}, [&](const Committee& w) {
      for (auto ax : {Axiom::jr, Axiom::pjr, Axiom::ejr}) {
        const bool poss = oracle::possibly(ax, inst, dist, w);
        const bool nec = oracle::necessarily(ax, inst, dist, w);
        auto p = is_poss_axiom(inst, model, w, ax);
        auto q = is_nec_axiom(inst, model, w, ax);
        EXPECT_EQ(p.answer, poss) << to_string(ax) << " iter " << iter;
        EXPECT_EQ(q.answer, nec) << to_string(ax) << " iter " << iter;
        EXPECT_EQ(is_poss_axiom(inst, model, w, ax, forced).answer, poss);
        EXPECT_EQ(is_nec_axiom(inst, model, w, ax, forced).answer, nec);
        if (q.answer) {
          EXPECT_TRUE(p.answer);
        }
        if (p.answer) {
          if (!p.profile) {
            ADD_FAILURE() << "missing witness";
            continue;
          }
          expect_plausible(model, *p.profile);
          EXPECT_TRUE(check_axiom(ax, inst, p.profile->profile, w).holds);
        }
        if (!q.answer) {
          if (!q.profile || !q.violation) {
            ADD_FAILURE() << "missing witness";
            continue;
          }
          expect_plausible(model, *q.profile);
          EXPECT_FALSE(check_axiom(ax, inst, q.profile->profile, w).holds);
        }
      }
      return true;
    });
  }
}

TEST_P(DecideOracle, ExistsNecessaryAgreesWithEnumeration) {
  SplitMix64 rng(2000 + static_cast<std::uint64_t>(GetParam()));
  for (int iter = 0; iter < 80; ++iter) {
    auto [inst, model] = oracle::random_model(rng, GetParam(), 4, 4);
    for (auto ax : {Axiom::jr, Axiom::pjr, Axiom::ejr}) {
      auto r = exists_nec_axiom(inst, model, ax);
      auto expected = oracle::first_necessary(ax, inst, model);
      EXPECT_EQ(r.answer, expected.has_value()) << to_string(ax) << " iter " << iter;
      if (r.answer) {
        ASSERT_TRUE(r.committee);
        EXPECT_EQ(r.committee->size(), inst.committee_size());
        EXPECT_TRUE(is_nec_axiom(inst, model, *r.committee, ax).answer);
        if (r.method == DecisionMethod::enumeration) {
          EXPECT_EQ(r.committee, expected);
        }
      }
    }
    auto poss = exists_poss_jr(inst, model);
    EXPECT_TRUE(is_poss_jr(inst, model, *poss.committee).answer);
  }
}

INSTANTIATE_TEST_SUITE_P(AllKinds, DecideOracle,
                         ::testing::Values(ModelKind::joint, ModelKind::lottery, ModelKind::cp, ModelKind::tva),
                         [](const auto& info) { return to_string(info.param) == "3va" ? std::string("tva") : to_string(info.param); });

TEST(DecideProperties, SingletonLotteryFastPathMatchesScan) {
  SplitMix64 rng(77);
  SolveOptions forced;
  forced.force_enumeration = true;
  for (int iter = 0; iter < 150; ++iter) {
    const std::size_t n = 1 + rng.below(5), m = 1 + rng.below(5), k = 1 + rng.below(m);
    const Instance inst(n, m, k);
    Model model = oracle::random_singleton_lottery(rng, n, m);
    auto fast = exists_nec_jr(inst, model);
    auto slow = exists_nec_jr(inst, model, forced);
    EXPECT_EQ(fast.method, DecisionMethod::poly_special_case);
    EXPECT_EQ(fast.answer, slow.answer);
    EXPECT_EQ(fast.answer, oracle::first_necessary(Axiom::jr, inst, model).has_value());
    if (fast.answer) {
      EXPECT_TRUE(oracle::necessarily(Axiom::jr, inst, model, *fast.committee));
    }
  }
}

TEST(DecideProperties, InteriorCpExistsNecIffFullCommittee) {
  SplitMix64 rng(78);
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t k = 1; k <= m; ++k)
      for (int iter = 0; iter < 4; ++iter) {
        const std::size_t n = 1 + rng.below(3);
        const Instance inst(n, m, k);
        Model model = oracle::random_interior_cp(rng, n, m);
        auto r = exists_nec_jr(inst, model);
        EXPECT_EQ(r.answer, k == m);
        EXPECT_EQ(r.answer, oracle::first_necessary(Axiom::jr, inst, model).has_value());
      }
}

// Fixing an unknown 3VA entry never turns a "no" for possible JR into "yes".
TEST(DecideProperties, RefiningUnknownsNeverCreatesPossibility) {
  SplitMix64 rng(79);
  for (int iter = 0; iter < 200; ++iter) {
    auto [inst, model] = oracle::random_model(rng, ModelKind::tva, 4, 4);
    const auto& t = std::get<ThreeValuedModel>(model);
    const auto w = oracle::random_committee(rng, inst.candidates(), inst.committee_size());
    const bool before = is_poss_jr(inst, model, w).answer;
    for (std::size_t i = 0; i < t.n; ++i)
      for (std::size_t x = 0; x < t.m; ++x) {
        if (t.t[i][x] != Tri::unknown) continue;
        for (auto value : {Tri::approve, Tri::disapprove}) {
          auto refined = t;
          refined.t[i][x] = value;
          if (!before) {
            EXPECT_FALSE(is_poss_jr(inst, Model{refined}, w).answer);
          }
        }
      }
  }
}

}  // namespace
}  // namespace abcu
