#pragma once

// Exact probability that a committee satisfies JR / PJR / EJR.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abcu/axioms.hpp"
#include "abcu/decide.hpp"
#include "abcu/uncertainty.hpp"

namespace abcu {

enum class ProbMethod { joint_scan, closed_form_certain_w, count_k_eq_n, enumeration };

inline std::string to_string(ProbMethod m) {
  switch (m) {
    case ProbMethod::joint_scan: return "joint-scan";
    case ProbMethod::closed_form_certain_w: return "closed-form-certain-w";
    case ProbMethod::count_k_eq_n: return "count-k-eq-n";
    case ProbMethod::enumeration: return "enumeration";
  }
  return "?";
}

/// (#plausible profiles where the axiom holds, #plausible profiles). Only
/// meaningful for 3VA, where all plausible profiles are equiprobable.
struct ProfileCounts {
  BigInt satisfying;
  BigInt total;
  friend bool operator==(const ProfileCounts&, const ProfileCounts&) = default;
};

struct ProbResult {
  Probability value;
  ProbMethod method = ProbMethod::enumeration;
  std::optional<ProfileCounts> counts;
};

namespace detail {

inline std::size_t unknown_count(const ThreeValuedModel& model) {
  std::size_t x = 0;
  for (const auto& row : model.t)
    for (Tri t : row) x += t == Tri::unknown;
  return x;
}

// Every entry over committee members is 0 or 1.
inline bool certain_over_committee(const ThreeValuedModel& model, const Committee& w) {
  for (const auto& row : model.t) {
    bool ok = true;
    w.for_each([&](Candidate c) { ok = ok && row[c] != Tri::unknown; });
    if (!ok) return false;
  }
  return true;
}

// Closed form when w's column entries are all certain. The voters left
// unrepresented are then fixed; for each outside candidate c, the violation
// depends only on the unknown (voter, c) entries of those voters, and these
// variable sets are disjoint across candidates, so the per-candidate
// "no violation" counts multiply.
inline ProfileCounts tva_count_certain_w(const Instance& inst, const ThreeValuedModel& model,
                                         const Committee& w) {
  std::vector<std::size_t> unrep;
  for (std::size_t i = 0; i < model.n; ++i) {
    bool represented = false;
    w.for_each([&](Candidate c) { represented = represented || model.t[i][c] == Tri::approve; });
    if (!represented) unrep.push_back(i);
  }
  const std::size_t x_total = unknown_count(model);
  ProfileCounts out{0, pow2(x_total)};

  // Unknowns outside the per-candidate factors are free and multiply in.
  std::size_t used = 0;
  BigInt satisfying = 1;
  for (Candidate c = 0; c < inst.candidates(); ++c) {
    if (w.contains(c)) continue;
    std::size_t certain = 0, unknown = 0;
    for (auto i : unrep) {
      if (model.t[i][c] == Tri::approve) ++certain;
      if (model.t[i][c] == Tri::unknown) ++unknown;
    }
    if (meets_threshold(certain, 1, inst)) return out;
    // tau: fewest extra approvers among the unknowns that complete a violation.
    std::size_t tau = 0;
    while (!meets_threshold(certain + tau, 1, inst)) ++tau;
    BigInt violating = 0;
    for (std::size_t l = tau; l <= unknown; ++l) violating += binomial(unknown, l);
    satisfying *= pow2(unknown) - violating;
    used += unknown;
  }
  out.satisfying = satisfying * pow2(x_total - used);
  return out;
}

// k = n: the threshold is one voter, so JR holds iff every voter with a
// nonempty approval set is represented; voters are independent.
inline ProfileCounts tva_count_k_eq_n(const ThreeValuedModel& model, const Committee& w) {
  ProfileCounts out{1, 1};
  for (const auto& row : model.t) {
    std::size_t x = 0, y = 0;
    bool certain_in_w = false, certain_any = false;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const bool in_w = w.contains(static_cast<Candidate>(c));
      if (row[c] == Tri::unknown) {
        ++x;
        if (in_w) ++y;
      } else if (row[c] == Tri::approve) {
        certain_any = true;
        if (in_w) certain_in_w = true;
      }
    }
    BigInt t;
    if (certain_in_w) {
      t = pow2(x);
    } else {
      t = (pow2(y) - 1) * pow2(x - y);
      if (!certain_any) t += 1;
    }
    out.satisfying *= t;
    out.total *= pow2(x);
  }
  return out;
}

inline Probability ratio(const ProfileCounts& counts) {
  return Probability(Rational(counts.satisfying, counts.total));
}

// Sum over an already materialized profile list.
inline Probability axiom_probability_over(const std::vector<PlausibleProfile>& profiles,
                                          const Instance& inst, const Committee& w, Axiom axiom) {
  Rational total = 0;
  for (const auto& pp : profiles)
    if (check_axiom(axiom, inst, pp.profile, w)) total += pp.prob.value();
  return Probability(total);
}

inline ProbResult enumerate_probability(const Instance& inst, const Model& model,
                                        const Committee& w, Axiom axiom, const Budget& budget) {
  ProbResult out;
  out.method = ProbMethod::enumeration;
  Rational total = 0;
  BigInt satisfying = 0, count = 0;
  for_each_plausible(model, budget, [&](const PlausibleProfile& pp) {
    ++count;
    if (check_axiom(axiom, inst, pp.profile, w)) {
      total += pp.prob.value();
      ++satisfying;
    }
  });
  out.value = Probability(total);
  if (std::holds_alternative<ThreeValuedModel>(model)) out.counts = ProfileCounts{satisfying, count};
  return out;
}

// Polynomial JR routes, if one applies.
inline std::optional<ProbResult> fast_jr_probability(const Instance& inst, const Model& model,
                                                     const Committee& w) {
  if (auto* joint = std::get_if<JointModel>(&model)) {
    Rational total = 0;
    for (const auto& e : joint->entries)
      if (is_jr(inst, e.profile, w)) total += e.prob.value();
    return ProbResult{Probability(total), ProbMethod::joint_scan, std::nullopt};
  }
  if (auto* tva = std::get_if<ThreeValuedModel>(&model)) {
    if (certain_over_committee(*tva, w)) {
      auto counts = tva_count_certain_w(inst, *tva, w);
      return ProbResult{ratio(counts), ProbMethod::closed_form_certain_w, counts};
    }
    if (inst.committee_size() == inst.voters()) {
      auto counts = tva_count_k_eq_n(*tva, w);
      return ProbResult{ratio(counts), ProbMethod::count_k_eq_n, counts};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Exact probability that w satisfies JR: the sum over plausible profiles of
/// their probability times the JR indicator. Uses a direct scan for Joint
/// models and the 3VA counting formulas (certain entries over w, or k = n)
/// when they apply; enumerates otherwise.
inline ProbResult jr_probability(const Instance& inst, const Model& model, const Committee& w,
                                 const SolveOptions& opts = {}) {
  detail::check_query(inst, model, w);
  if (!opts.force_enumeration)
    if (auto fast = detail::fast_jr_probability(inst, model, w)) return *std::move(fast);
  return detail::enumerate_probability(inst, model, w, Axiom::jr, opts.budget);
}

/// Number of completions of a 3VA model in which w is JR, and the total
/// 2^(#unknown entries).
inline ProfileCounts jr_satisfying_count(const Instance& inst, const ThreeValuedModel& model,
                                         const Committee& w, const SolveOptions& opts = {}) {
  return *jr_probability(inst, Model{model}, w, opts).counts;
}

inline ProbResult axiom_probability(const Instance& inst, const Model& model, const Committee& w,
                                    Axiom axiom, const SolveOptions& opts = {}) {
  if (axiom == Axiom::jr) return jr_probability(inst, model, w, opts);
  detail::check_query(inst, model, w);
  auto out = detail::enumerate_probability(inst, model, w, axiom, opts.budget);
  if (std::holds_alternative<JointModel>(model) && !opts.force_enumeration)
    out.method = ProbMethod::joint_scan;
  return out;
}

}  // namespace abcu
