#include <gtest/gtest.h>

#include "abcu/decide.hpp"
#include "abcu/optimize.hpp"
#include "abcu/reductions.hpp"
#include "support/oracles.hpp"

namespace abcu {
namespace {

TEST(MaxAxiom, ThreeValuedExample) {
  ThreeValuedModel t{2, 2, {{Tri::disapprove, Tri::approve}, {Tri::disapprove, Tri::unknown}}};
  const Instance inst(2, 2, 1);
  auto r = max_axiom(inst, t, Axiom::jr);
  EXPECT_EQ(r.committee, Committee{1});
  EXPECT_TRUE(r.value.is_one());
  EXPECT_EQ(r.ties, 1u);
  EXPECT_EQ(jr_probability(inst, t, {0}).value, Probability(1, 2));
}

TEST(MaxAxiom, CertainProfileReturnsLeastJrCommittee) {
  const Instance inst(4, 3, 2);
  JointModel joint{4, 3, {{Probability::one(), {{0}, {0}, {1}, {1}}}}};
  auto r = max_axiom(inst, joint, Axiom::jr);
  EXPECT_EQ(r.committee, (Committee{0, 1}));
  EXPECT_TRUE(r.value.is_one());
}

TEST(MaxAxiom, InteriorCpStaysBelowOne) {
  SplitMix64 rng(4);
  auto cp = oracle::random_interior_cp(rng, 3, 3);
  auto r = max_axiom(Instance(3, 3, 2), cp, Axiom::jr);
  EXPECT_LT(r.value, Probability::one());
  EXPECT_GT(r.value, Probability::zero());
}

TEST(MaxAxiom, BudgetError) {
  SolveOptions tight;
  tight.budget = Budget{1 << 20, 3};
  EXPECT_THROW(max_axiom(Instance(1, 4, 2), JointModel{1, 4, {{Probability::one(), {{0}}}}}, Axiom::jr, tight),
               BudgetError);
}

TEST(MaxAxiomProperties, AgreesWithExistsNecAndDominates) {
  SplitMix64 rng(500);
  for (auto kind : {ModelKind::joint, ModelKind::lottery, ModelKind::cp, ModelKind::tva})
    for (int iter = 0; iter < 40; ++iter) {
      auto [inst, model] = oracle::random_model(rng, kind, 4, 4);
      for (auto ax : {Axiom::jr, Axiom::pjr, Axiom::ejr}) {
        auto best = max_axiom(inst, model, ax);
        EXPECT_EQ(best.value, axiom_probability(inst, model, best.committee, ax).value);
        EXPECT_EQ(best.value.is_one(), exists_nec_axiom(inst, model, ax).answer);
        // Brute-force maximum, least maximizer and tie count.
        Rational top = -1;
        std::size_t ties = 0;
        Committee least;
        for_each_committee(inst, Budget{}, [&](const Committee& w) {
          const auto p = oracle::axiom_probability(ax, inst, model, w);
          if (p > top) {
            top = p;
            ties = 1;
            least = w;
          } else if (p == top) {
            ++ties;
          }
          return true;
        });
        EXPECT_EQ(best.value.value(), top);
        EXPECT_EQ(best.committee, least);
        EXPECT_EQ(best.ties, ties);
      }
      auto best = max_axiom(inst, model, Axiom::jr);
      const auto& w = best.committee;
      EXPECT_LE(axiom_probability(inst, model, w, Axiom::ejr).value, axiom_probability(inst, model, w, Axiom::pjr).value);
      EXPECT_LE(axiom_probability(inst, model, w, Axiom::pjr).value, best.value);
    }
}

TEST(SizeJr, Examples) {
  auto no = size_jr(Instance(2, 2, 2), {{0}, {1}}, 1);
  EXPECT_FALSE(no.answer);
  auto yes = size_jr(Instance(2, 2, 2), {{0}, {0}}, 1);
  ASSERT_TRUE(yes.answer);
  EXPECT_EQ(yes.committee, Committee{0});
  EXPECT_THROW(size_jr(Instance(2, 2, 2), {{0}, {0}}, 2), PreconditionError);
  EXPECT_THROW(size_jr(Instance(2, 2, 2), {{0}, {0}}, 0), PreconditionError);
}

TEST(SizeJr, MatchesBruteForce) {
  SplitMix64 rng(501);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 1 + rng.below(5), m = 2 + rng.below(4), k = 2 + rng.below(m - 1);
    const Instance inst(n, m, k);
    const auto profile = oracle::random_profile(rng, n, m);
    const std::size_t r = 1 + rng.below(k - 1);
    bool expected = false;
    for_each_combination(m, r, [&](const std::vector<std::size_t>& idx) {
      Committee w;
      for (auto c : idx) w.insert(static_cast<Candidate>(c));
      expected = expected || oracle::jr(inst, profile, w);
      return true;
    });
    auto got = size_jr(inst, profile, r);
    EXPECT_EQ(got.answer, expected);
    if (got.answer) {
      EXPECT_EQ(got.committee->size(), r);
      EXPECT_TRUE(oracle::jr(inst, profile, *got.committee));
    }
  }
}

}  // namespace
}  // namespace abcu
