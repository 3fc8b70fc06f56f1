#pragma once

// Committees maximizing the probability of JR / PJR / EJR, and SizeJR.

#include <optional>

#include "abcu/probability.hpp"

namespace abcu {

struct MaxResult {
  Committee committee;  // lexicographically least maximizer
  Probability value;
  std::size_t ties = 0;  // committees attaining `value`
};

/// Scans all C(m, k) committees in lexicographic order. JR uses the polynomial
/// probability routes per committee where they apply; everything else sums
/// over a single materialization of the plausible profiles.
inline MaxResult max_axiom(const Instance& inst, const Model& model, Axiom axiom,
                           const SolveOptions& opts = {}) {
  if (model_voters(model) != inst.voters() || model_candidates(model) != inst.candidates())
    throw InputError("model dimensions do not match the instance");

  std::optional<std::vector<PlausibleProfile>> profiles;
  auto evaluate = [&](const Committee& w) -> Probability {
    if (axiom == Axiom::jr && !opts.force_enumeration)
      if (auto fast = detail::fast_jr_probability(inst, model, w)) return fast->value;
    if (!profiles) profiles = enumerate_plausible(model, opts.budget);
    return detail::axiom_probability_over(*profiles, inst, w, axiom);
  };

  std::optional<MaxResult> best;
  for_each_committee(inst, opts.budget, [&](const Committee& w) {
    auto value = evaluate(w);
    if (!best || value > best->value) {
      best = MaxResult{w, std::move(value), 1};
    } else if (value == best->value) {
      ++best->ties;
    }
    return true;
  });
  return *best;
}

struct SizeJrResult {
  bool answer = false;
  std::optional<Committee> committee;
};

/// Is there a committee of size r < k that is JR for the profile, where the
/// group threshold still uses the instance's n/k?
inline SizeJrResult size_jr(const Instance& inst, const ApprovalProfile& profile, std::size_t r,
                            const Budget& budget = {}) {
  if (r < 1 || r >= inst.committee_size())
    throw PreconditionError("size_jr requires 1 <= r < k (r=" + std::to_string(r) +
                            ", k=" + std::to_string(inst.committee_size()) + ")");
  check_profile(inst, profile);
  const BigInt count = binomial(inst.candidates(), r);
  if (count > budget.committees) throw BudgetError("committee count", count, budget.committees);
  SizeJrResult out;
  for_each_combination(inst.candidates(), r, [&](const std::vector<std::size_t>& idx) {
    Committee w;
    for (auto c : idx) w.insert(static_cast<Candidate>(c));
    if (!detail::find_jr_violation(inst, profile, w)) return true;
    out.answer = true;
    out.committee = std::move(w);
    return false;
  });
  return out;
}

}  // namespace abcu
