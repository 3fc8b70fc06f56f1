#pragma once

// Possible / necessary decision problems for JR, PJR and EJR under the four
// uncertainty models.

#include <optional>
#include <string>
#include <vector>

#include "abcu/axioms.hpp"
#include "abcu/uncertainty.hpp"

namespace abcu {

enum class DecisionMethod {
  poly_special_case,  // polynomial algorithm for the model at hand
  backtracking,       // exact pruned search (Lottery possible-JR)
  enumeration,        // plausible-profile and/or committee enumeration
  trivial,            // answer known a priori (exists possible JR)
};

inline std::string to_string(DecisionMethod m) {
  switch (m) {
    case DecisionMethod::poly_special_case: return "poly-special-case";
    case DecisionMethod::backtracking: return "backtracking";
    case DecisionMethod::enumeration: return "enumeration";
    case DecisionMethod::trivial: return "trivial";
  }
  return "?";
}

struct DecisionResult {
  bool answer = false;
  std::optional<PlausibleProfile> profile;  // world witnessing the answer
  std::optional<Violation> violation;       // set for necessary-* refutations
  std::optional<Committee> committee;       // set for exists-* answers
  DecisionMethod method = DecisionMethod::enumeration;

  explicit operator bool() const noexcept { return answer; }
};

struct SolveOptions {
  Budget budget;
  /// Skip every polynomial special case and decide by enumeration.
  bool force_enumeration = false;
};

namespace detail {

inline CandidateProbModel as_cp(const Model& model) {
  if (auto* t = std::get_if<ThreeValuedModel>(&model)) return tva_to_cp(*t);
  return std::get<CandidateProbModel>(model);
}

inline bool is_cp_like(const Model& model) {
  return std::holds_alternative<CandidateProbModel>(model) ||
         std::holds_alternative<ThreeValuedModel>(model);
}

inline void check_query(const Instance& inst, const Model& model, const Committee& w) {
  check_committee(inst, w);
  if (model_voters(model) != inst.voters() || model_candidates(model) != inst.candidates())
    throw InputError("model dimensions do not match the instance");
}

inline DecisionResult possible_by_enumeration(const Instance& inst, const Model& model,
                                              const Committee& w, Axiom axiom, const Budget& budget) {
  DecisionResult out;
  for_each_plausible(model, budget, [&](const PlausibleProfile& pp) {
    if (!check_axiom(axiom, inst, pp.profile, w)) return true;
    out.answer = true;
    out.profile = pp;
    return false;
  });
  return out;
}

inline DecisionResult necessary_by_enumeration(const Instance& inst, const Model& model,
                                               const Committee& w, Axiom axiom, const Budget& budget) {
  DecisionResult out;
  out.answer = true;
  for_each_plausible(model, budget, [&](const PlausibleProfile& pp) {
    auto check = check_axiom(axiom, inst, pp.profile, w);
    if (check) return true;
    out.answer = false;
    out.profile = pp;
    out.violation = std::move(check.violation);
    return false;
  });
  return out;
}

// Backtracking over per-voter set choices, voter 0 first, sets in input order.
// A branch dies as soon as some candidate outside w has n/k committed
// unrepresented approvers; reaching a full assignment yields a JR profile.
inline DecisionResult lottery_possible_jr(const Instance& inst, const LotteryModel& model,
                                          const Committee& w, const Budget& budget) {
  const std::size_t n = model.n;
  std::vector<std::size_t> unrep_count(model.m, 0);
  std::vector<std::size_t> choice(n, 0);
  std::uint64_t nodes = 0;
  bool found = false;

  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      found = true;
      return;
    }
    for (std::size_t r = 0; r < model.voters[i].size() && !found; ++r) {
      if (++nodes > budget.profiles)
        throw BudgetError("lottery search nodes", BigInt(nodes), budget.profiles);
      const auto& s = model.voters[i][r].set;
      std::vector<Candidate> bumped;
      bool dead = false;
      if (!s.intersects(w)) {
        s.for_each([&](Candidate c) {
          if (w.contains(c)) return;
          bumped.push_back(c);
          if (meets_threshold(++unrep_count[c], 1, inst)) dead = true;
        });
      }
      if (!dead) {
        choice[i] = r;
        self(self, i + 1);
      }
      if (!found)
        for (Candidate c : bumped) --unrep_count[c];
    }
  };
  rec(rec, 0);

  DecisionResult out;
  out.method = DecisionMethod::backtracking;
  out.answer = found;
  if (found) {
    PlausibleProfile pp{ApprovalProfile(n), Probability::one()};
    for (std::size_t i = 0; i < n; ++i) {
      pp.profile[i] = model.voters[i][choice[i]].set;
      pp.prob *= model.voters[i][choice[i]].prob;
    }
    out.profile = std::move(pp);
  }
  return out;
}

// Best case for w: approve every committee member with p > 0, and outside w
// only what is forced (p = 1).
inline ApprovalProfile cp_best_case(const CandidateProbModel& cp, const Committee& w) {
  ApprovalProfile profile(cp.n);
  for (std::size_t i = 0; i < cp.n; ++i)
    for (std::size_t c = 0; c < cp.m; ++c) {
      const auto& p = cp.p[i][c];
      const bool in_w = w.contains(static_cast<Candidate>(c));
      if ((in_w && !p.is_zero()) || (!in_w && p.is_one())) profile[i].insert(static_cast<Candidate>(c));
    }
  return profile;
}

// Worst case for w: approve committee members only when forced, and every
// outside candidate with p > 0.
inline ApprovalProfile cp_worst_case(const CandidateProbModel& cp, const Committee& w) {
  ApprovalProfile profile(cp.n);
  for (std::size_t i = 0; i < cp.n; ++i)
    for (std::size_t c = 0; c < cp.m; ++c) {
      const auto& p = cp.p[i][c];
      const bool in_w = w.contains(static_cast<Candidate>(c));
      if ((in_w && p.is_one()) || (!in_w && !p.is_zero())) profile[i].insert(static_cast<Candidate>(c));
    }
  return profile;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Possible JR
// ---------------------------------------------------------------------------

/// Does w satisfy JR in at least one plausible profile?
inline DecisionResult is_poss_jr(const Instance& inst, const Model& model, const Committee& w,
                                 const SolveOptions& opts = {}) {
  detail::check_query(inst, model, w);
  if (opts.force_enumeration || std::holds_alternative<JointModel>(model)) {
    auto out = detail::possible_by_enumeration(inst, model, w, Axiom::jr, opts.budget);
    if (!opts.force_enumeration) out.method = DecisionMethod::poly_special_case;
    return out;
  }
  if (auto* lottery = std::get_if<LotteryModel>(&model))
    return detail::lottery_possible_jr(inst, *lottery, w, opts.budget);

  // CP / 3VA: the best-case completion is plausible and dominates every other
  // completion, so one JR check decides.
  const auto cp = detail::as_cp(model);
  auto profile = detail::cp_best_case(cp, w);
  DecisionResult out;
  out.method = DecisionMethod::poly_special_case;
  out.answer = static_cast<bool>(is_jr(inst, profile, w));
  if (out.answer) out.profile = PlausibleProfile{profile, profile_probability(model, profile)};
  return out;
}

/// Always yes: every profile admits a JR committee. The witness is the greedy
/// committee on the first plausible profile.
inline DecisionResult exists_poss_jr(const Instance& inst, const Model& model) {
  auto pp = first_plausible(model);
  DecisionResult out;
  out.answer = true;
  out.method = DecisionMethod::trivial;
  out.committee = greedy_jr_committee(inst, pp.profile);
  out.profile = std::move(pp);
  return out;
}

// ---------------------------------------------------------------------------
// Necessary JR
// ---------------------------------------------------------------------------

/// Does w satisfy JR in every plausible profile? Refutations carry the
/// violating profile and the violation found in it.
inline DecisionResult is_nec_jr(const Instance& inst, const Model& model, const Committee& w,
                                const SolveOptions& opts = {}) {
  detail::check_query(inst, model, w);
  if (opts.force_enumeration || std::holds_alternative<JointModel>(model)) {
    auto out = detail::necessary_by_enumeration(inst, model, w, Axiom::jr, opts.budget);
    if (!opts.force_enumeration) out.method = DecisionMethod::poly_special_case;
    return out;
  }

  DecisionResult out;
  out.method = DecisionMethod::poly_special_case;
  out.answer = true;

  if (auto* lottery = std::get_if<LotteryModel>(&model)) {
    // A voter can join an unrepresented coalition for c only through a single
    // plausible set that contains c and misses w.
    for (Candidate c = 0; c < inst.candidates(); ++c) {
      if (w.contains(c)) continue;
      std::vector<std::optional<std::size_t>> pick(inst.voters());
      std::size_t count = 0;
      for (std::size_t i = 0; i < inst.voters(); ++i) {
        const auto& sets = lottery->voters[i];
        for (std::size_t r = 0; r < sets.size(); ++r)
          if (sets[r].set.contains(c) && !sets[r].set.intersects(w)) {
            pick[i] = r;
            ++count;
            break;
          }
      }
      if (!meets_threshold(count, 1, inst)) continue;
      PlausibleProfile pp{ApprovalProfile(inst.voters()), Probability::one()};
      for (std::size_t i = 0; i < inst.voters(); ++i) {
        const auto& ws = lottery->voters[i][pick[i].value_or(0)];
        pp.profile[i] = ws.set;
        pp.prob *= ws.prob;
      }
      out.answer = false;
      out.violation = is_jr(inst, pp.profile, w).violation;
      out.profile = std::move(pp);
      return out;
    }
    return out;
  }

  // CP / 3VA: voters possibly approving c and not certainly represented.
  const auto cp = detail::as_cp(model);
  for (Candidate c = 0; c < inst.candidates(); ++c) {
    if (w.contains(c)) continue;
    std::size_t count = 0;
    for (std::size_t i = 0; i < inst.voters(); ++i) {
      if (cp.p[i][c].is_zero()) continue;
      bool certain = false;
      w.for_each([&](Candidate x) { certain = certain || cp.p[i][x].is_one(); });
      if (!certain) ++count;
    }
    if (!meets_threshold(count, 1, inst)) continue;
    auto profile = detail::cp_worst_case(cp, w);
    out.answer = false;
    out.violation = is_jr(inst, profile, w).violation;
    out.profile = PlausibleProfile{profile, profile_probability(model, profile)};
    return out;
  }
  return out;
}

namespace detail {

inline bool all_singleton_supports(const LotteryModel& model) {
  for (const auto& voter : model.voters)
    for (const auto& ws : voter)
      if (ws.set.size() != 1) return false;
  return true;
}

inline bool all_interior(const CandidateProbModel& cp) {
  for (const auto& row : cp.p)
    for (const auto& p : row)
      if (!p.is_interior()) return false;
  return true;
}

}  // namespace detail

/// Is there a size-k committee that is JR in every plausible profile?
/// Polynomial for singleton-support lotteries and for CP/3VA models whose
/// entries are all strictly between 0 and 1; otherwise scans committees in
/// lexicographic order.
inline DecisionResult exists_nec_jr(const Instance& inst, const Model& model,
                                    const SolveOptions& opts = {}) {
  if (model_voters(model) != inst.voters() || model_candidates(model) != inst.candidates())
    throw InputError("model dimensions do not match the instance");

  if (!opts.force_enumeration) {
    if (auto* lottery = std::get_if<LotteryModel>(&model);
        lottery && detail::all_singleton_supports(*lottery)) {
      std::vector<std::size_t> potential(inst.candidates(), 0);
      for (const auto& voter : lottery->voters) {
        CandidateSet seen;
        for (const auto& ws : voter) seen |= ws.set;
        seen.for_each([&](Candidate c) { ++potential[c]; });
      }
      Committee mandatory;
      for (Candidate c = 0; c < inst.candidates(); ++c)
        if (meets_threshold(potential[c], 1, inst)) mandatory.insert(c);
      DecisionResult out;
      out.method = DecisionMethod::poly_special_case;
      out.answer = mandatory.size() <= inst.committee_size();
      if (out.answer) {
        for (Candidate c = 0; mandatory.size() < inst.committee_size(); ++c)
          if (!mandatory.contains(c)) mandatory.insert(c);
        out.committee = std::move(mandatory);
      }
      return out;
    }
    if (detail::is_cp_like(model) && detail::all_interior(detail::as_cp(model))) {
      DecisionResult out;
      out.method = DecisionMethod::poly_special_case;
      out.answer = inst.committee_size() == inst.candidates();
      if (out.answer) out.committee = Committee::prefix(inst.candidates());
      return out;
    }
  }

  DecisionResult out;
  out.method = DecisionMethod::enumeration;
  SolveOptions inner = opts;
  for_each_committee(inst, opts.budget, [&](const Committee& w) {
    if (!is_nec_jr(inst, model, w, inner)) return true;
    out.answer = true;
    out.committee = w;
    return false;
  });
  return out;
}

// ---------------------------------------------------------------------------
// PJR / EJR (and JR through the same entry points)
// ---------------------------------------------------------------------------

inline DecisionResult is_poss_axiom(const Instance& inst, const Model& model, const Committee& w,
                                    Axiom axiom, const SolveOptions& opts = {}) {
  if (axiom == Axiom::jr) return is_poss_jr(inst, model, w, opts);
  detail::check_query(inst, model, w);
  return detail::possible_by_enumeration(inst, model, w, axiom, opts.budget);
}

inline DecisionResult is_nec_axiom(const Instance& inst, const Model& model, const Committee& w,
                                   Axiom axiom, const SolveOptions& opts = {}) {
  if (axiom == Axiom::jr) return is_nec_jr(inst, model, w, opts);
  detail::check_query(inst, model, w);
  return detail::necessary_by_enumeration(inst, model, w, axiom, opts.budget);
}

/// Committee scan in lexicographic order; the plausible profiles are
/// materialized once and shared across committees.
inline DecisionResult exists_nec_axiom(const Instance& inst, const Model& model, Axiom axiom,
                                       const SolveOptions& opts = {}) {
  if (axiom == Axiom::jr) return exists_nec_jr(inst, model, opts);
  if (model_voters(model) != inst.voters() || model_candidates(model) != inst.candidates())
    throw InputError("model dimensions do not match the instance");
  const auto profiles = enumerate_plausible(model, opts.budget);
  DecisionResult out;
  out.method = DecisionMethod::enumeration;
  for_each_committee(inst, opts.budget, [&](const Committee& w) {
    for (const auto& pp : profiles)
      if (!check_axiom(axiom, inst, pp.profile, w)) return true;
    out.answer = true;
    out.committee = w;
    return false;
  });
  return out;
}

}  // namespace abcu
