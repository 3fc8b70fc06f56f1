#pragma once

// The four uncertainty models over approval profiles, their validation and
// conversions, and a deterministic enumerator of plausible profiles.

#include <map>
#include <set>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "abcu/core.hpp"

namespace abcu {

struct WeightedProfile {
  Probability prob;
  ApprovalProfile profile;
  friend bool operator==(const WeightedProfile&, const WeightedProfile&) = default;
};

struct WeightedSet {
  Probability prob;
  ApprovalSet set;
  friend bool operator==(const WeightedSet&, const WeightedSet&) = default;
};

/// Explicit distribution over whole profiles.
struct JointModel {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<WeightedProfile> entries;
  friend bool operator==(const JointModel&, const JointModel&) = default;
};

/// Independent per-voter distributions over approval sets.
struct LotteryModel {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::vector<WeightedSet>> voters;
  friend bool operator==(const LotteryModel&, const LotteryModel&) = default;
};

/// Independent approval probability per (voter, candidate) pair.
struct CandidateProbModel {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::vector<Probability>> p;  // p[i][c]
  friend bool operator==(const CandidateProbModel&, const CandidateProbModel&) = default;
};

enum class Tri : std::uint8_t { disapprove, unknown, approve };

/// Candidate-probability model restricted to {0, 1/2, 1}.
struct ThreeValuedModel {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<std::vector<Tri>> t;  // t[i][c]
  friend bool operator==(const ThreeValuedModel&, const ThreeValuedModel&) = default;
};

using Model = std::variant<JointModel, LotteryModel, CandidateProbModel, ThreeValuedModel>;

enum class ModelKind { joint, lottery, cp, tva };

inline ModelKind kind_of(const Model& model) { return static_cast<ModelKind>(model.index()); }

inline std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::joint: return "joint";
    case ModelKind::lottery: return "lottery";
    case ModelKind::cp: return "cp";
    case ModelKind::tva: return "3va";
  }
  return "?";
}

inline ModelKind parse_model_kind(std::string_view s) {
  if (s == "joint") return ModelKind::joint;
  if (s == "lottery") return ModelKind::lottery;
  if (s == "cp") return ModelKind::cp;
  if (s == "3va") return ModelKind::tva;
  throw InputError("unknown model kind \"" + std::string(s) + "\"");
}

inline std::size_t model_voters(const Model& model) {
  return std::visit([](const auto& x) { return x.n; }, model);
}
inline std::size_t model_candidates(const Model& model) {
  return std::visit([](const auto& x) { return x.m; }, model);
}

inline Probability tri_probability(Tri t) {
  switch (t) {
    case Tri::disapprove: return Probability::zero();
    case Tri::unknown: return Probability(1, 2);
    case Tri::approve: return Probability::one();
  }
  return Probability::zero();
}

/// Maps 0, 1/2, 1 onto the three-valued entries; anything else is an error.
inline Tri tri_from_rational(const Rational& r) {
  if (r == 0) return Tri::disapprove;
  if (r == Rational(1, 2)) return Tri::unknown;
  if (r == 1) return Tri::approve;
  throw InputError("three-valued entry " + r.str() + " is not one of {0, 1/2, 1}");
}

struct PlausibleProfile {
  ApprovalProfile profile;
  Probability prob;
  friend bool operator==(const PlausibleProfile&, const PlausibleProfile&) = default;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace detail {

inline void check_set(std::vector<std::string>& errors, const std::string& where,
                      const ApprovalSet& s, std::size_t m) {
  if (s.bound() > m)
    errors.push_back(where + ": approval set " + s.to_string() + " has a candidate >= m=" +
                     std::to_string(m));
}

inline void check_dims(std::vector<std::string>& errors, const char* what, std::size_t n,
                       std::size_t m) {
  if (n < 1) errors.push_back(std::string(what) + ": needs at least one voter");
  if (m < 1) errors.push_back(std::string(what) + ": needs at least one candidate");
}

}  // namespace detail

inline std::vector<std::string> validate(const JointModel& model) {
  std::vector<std::string> errors;
  detail::check_dims(errors, "joint", model.n, model.m);
  if (model.entries.empty()) errors.push_back("joint: no profiles");
  Rational total = 0;
  std::set<ApprovalProfile> seen;
  for (std::size_t r = 0; r < model.entries.size(); ++r) {
    const auto& e = model.entries[r];
    const std::string where = "profiles[" + std::to_string(r) + "]";
    if (e.prob.is_zero()) errors.push_back(where + ": probability must be > 0");
    total += e.prob.value();
    if (e.profile.size() != model.n)
      errors.push_back(where + ": has " + std::to_string(e.profile.size()) +
                       " approval sets, expected n=" + std::to_string(model.n));
    for (std::size_t i = 0; i < e.profile.size(); ++i)
      detail::check_set(errors, where + ".sets[" + std::to_string(i) + "]", e.profile[i], model.m);
    if (!seen.insert(e.profile).second) errors.push_back(where + ": duplicate profile");
  }
  if (!model.entries.empty() && total != 1)
    errors.push_back("joint: probabilities sum to " + total.str() + ", expected 1");
  return errors;
}

inline std::vector<std::string> validate(const LotteryModel& model) {
  std::vector<std::string> errors;
  detail::check_dims(errors, "lottery", model.n, model.m);
  if (model.voters.size() != model.n)
    errors.push_back("lottery: has " + std::to_string(model.voters.size()) +
                     " voter lotteries, expected n=" + std::to_string(model.n));
  for (std::size_t i = 0; i < model.voters.size(); ++i) {
    const std::string where = "voters[" + std::to_string(i) + "]";
    const auto& lottery = model.voters[i];
    if (lottery.empty()) errors.push_back(where + ": empty lottery");
    Rational total = 0;
    std::set<ApprovalSet> seen;
    for (std::size_t r = 0; r < lottery.size(); ++r) {
      const std::string at = where + "[" + std::to_string(r) + "]";
      if (lottery[r].prob.is_zero()) errors.push_back(at + ": probability must be > 0");
      total += lottery[r].prob.value();
      detail::check_set(errors, at, lottery[r].set, model.m);
      if (!seen.insert(lottery[r].set).second) errors.push_back(at + ": duplicate approval set");
    }
    if (!lottery.empty() && total != 1)
      errors.push_back(where + ": probabilities sum to " + total.str() + ", expected 1");
  }
  return errors;
}

inline std::vector<std::string> validate(const CandidateProbModel& model) {
  std::vector<std::string> errors;
  detail::check_dims(errors, "cp", model.n, model.m);
  if (model.p.size() != model.n)
    errors.push_back("cp: has " + std::to_string(model.p.size()) + " rows, expected n=" +
                     std::to_string(model.n));
  for (std::size_t i = 0; i < model.p.size(); ++i)
    if (model.p[i].size() != model.m)
      errors.push_back("p[" + std::to_string(i) + "]: has " + std::to_string(model.p[i].size()) +
                       " entries, expected m=" + std::to_string(model.m));
  return errors;
}

inline std::vector<std::string> validate(const ThreeValuedModel& model) {
  std::vector<std::string> errors;
  detail::check_dims(errors, "3va", model.n, model.m);
  if (model.t.size() != model.n)
    errors.push_back("3va: has " + std::to_string(model.t.size()) + " rows, expected n=" +
                     std::to_string(model.n));
  for (std::size_t i = 0; i < model.t.size(); ++i)
    if (model.t[i].size() != model.m)
      errors.push_back("t[" + std::to_string(i) + "]: has " + std::to_string(model.t[i].size()) +
                       " entries, expected m=" + std::to_string(model.m));
  return errors;
}

inline std::vector<std::string> validate(const Model& model) {
  return std::visit([](const auto& x) { return validate(x); }, model);
}

/// Validates the model and checks that its dimensions match the instance.
inline std::vector<std::string> validate(const Instance& inst, const Model& model) {
  auto errors = validate(model);
  if (model_voters(model) != inst.voters())
    errors.push_back("model has n=" + std::to_string(model_voters(model)) +
                     " but instance has n=" + std::to_string(inst.voters()));
  if (model_candidates(model) != inst.candidates())
    errors.push_back("model has m=" + std::to_string(model_candidates(model)) +
                     " but instance has m=" + std::to_string(inst.candidates()));
  return errors;
}

inline void require_valid(const Instance& inst, const Model& model) {
  auto errors = validate(inst, model);
  if (errors.empty()) return;
  std::string msg = "invalid model:";
  for (auto& e : errors) msg += "\n  " + e;
  throw InputError(msg);
}

// ---------------------------------------------------------------------------
// Conversions
// ---------------------------------------------------------------------------

inline CandidateProbModel tva_to_cp(const ThreeValuedModel& model) {
  CandidateProbModel out{model.n, model.m, {}};
  out.p.reserve(model.n);
  for (const auto& row : model.t) {
    std::vector<Probability> prow;
    prow.reserve(row.size());
    for (Tri t : row) prow.push_back(tri_probability(t));
    out.p.push_back(std::move(prow));
  }
  return out;
}

namespace detail {

// Free (strictly interior) pairs of a CP row, ascending candidate.
inline std::vector<Candidate> free_candidates(const std::vector<Probability>& row) {
  std::vector<Candidate> out;
  for (std::size_t c = 0; c < row.size(); ++c)
    if (row[c].is_interior()) out.push_back(static_cast<Candidate>(c));
  return out;
}

}  // namespace detail

/// Per-voter support over all approval sets of positive probability, each
/// weighted by prod p (approved) * prod (1 - p) (not approved). Sets are listed
/// with the first free candidate as the slowest-changing bit, "not approved"
/// before "approved".
inline LotteryModel cp_to_lottery(const CandidateProbModel& model, const Budget& budget = {}) {
  LotteryModel out{model.n, model.m, {}};
  for (std::size_t i = 0; i < model.n; ++i) {
    const auto& row = model.p[i];
    const auto free = detail::free_candidates(row);
    const BigInt support = pow2(free.size());
    if (support > budget.profiles)
      throw BudgetError("voter " + std::to_string(i) + " support size", support, budget.profiles);
    ApprovalSet forced;
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c].is_one()) forced.insert(static_cast<Candidate>(c));
    std::vector<WeightedSet> lottery;
    const std::uint64_t count = std::uint64_t{1} << free.size();
    for (std::uint64_t mask = 0; mask < count; ++mask) {
      ApprovalSet s = forced;
      Probability prob = Probability::one();
      for (std::size_t j = 0; j < free.size(); ++j) {
        const bool approve = (mask >> (free.size() - 1 - j)) & 1u;
        if (approve) {
          s.insert(free[j]);
          prob *= row[free[j]];
        } else {
          prob *= row[free[j]].complement();
        }
      }
      lottery.push_back({prob, std::move(s)});
    }
    out.voters.push_back(std::move(lottery));
  }
  return out;
}

/// Number of plausible profiles, without enumerating them.
inline BigInt plausible_count(const Model& model) {
  return std::visit(
      [](const auto& x) -> BigInt {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, JointModel>) {
          return x.entries.size();
        } else if constexpr (std::is_same_v<T, LotteryModel>) {
          BigInt total = 1;
          for (const auto& v : x.voters) total *= v.size();
          return total;
        } else if constexpr (std::is_same_v<T, CandidateProbModel>) {
          std::size_t free = 0;
          for (const auto& row : x.p) free += detail::free_candidates(row).size();
          return pow2(free);
        } else {
          std::size_t free = 0;
          for (const auto& row : x.t)
            for (Tri t : row) free += t == Tri::unknown;
          return pow2(free);
        }
      },
      model);
}

namespace detail {

inline void check_budget(const BigInt& count, const Budget& budget) {
  if (count > budget.profiles)
    throw BudgetError("plausible profile count", count, budget.profiles);
}

template <class F>
bool invoke_visitor(F& f, const PlausibleProfile& pp) {
  if constexpr (std::is_same_v<std::invoke_result_t<F&, const PlausibleProfile&>, bool>) {
    return f(pp);
  } else {
    f(pp);
    return true;
  }
}

template <class F>
bool enumerate_lottery(const LotteryModel& model, F& f) {
  const std::size_t n = model.n;
  std::vector<std::size_t> choice(n, 0);
  while (true) {
    PlausibleProfile pp{ApprovalProfile(n), Probability::one()};
    for (std::size_t i = 0; i < n; ++i) {
      pp.profile[i] = model.voters[i][choice[i]].set;
      pp.prob *= model.voters[i][choice[i]].prob;
    }
    if (!invoke_visitor(f, pp)) return false;
    // Odometer: the last voter changes fastest.
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++choice[i] < model.voters[i].size()) break;
      choice[i] = 0;
      if (i == 0) return true;
    }
    if (n == 0) return true;
  }
}

template <class F>
bool enumerate_cp(const CandidateProbModel& model, F& f) {
  struct Pair {
    Voter voter;
    Candidate cand;
  };
  std::vector<Pair> free;
  ApprovalProfile base(model.n);
  for (std::size_t i = 0; i < model.n; ++i)
    for (std::size_t c = 0; c < model.m; ++c) {
      const auto& p = model.p[i][c];
      if (p.is_one()) base[i].insert(static_cast<Candidate>(c));
      if (p.is_interior()) free.push_back({static_cast<Voter>(i), static_cast<Candidate>(c)});
    }
  // Mixed-radix counter over free pairs; the first pair is most significant,
  // "disapprove" (0) before "approve" (1).
  // With every free pair at 1/2 (all 3VA models) the profiles are
  // equiprobable and the weight is computed once.
  const Probability half(1, 2);
  const bool uniform = std::all_of(free.begin(), free.end(),
                                   [&](const Pair& x) { return model.p[x.voter][x.cand] == half; });
  const Probability uniform_prob(Rational(1, pow2(free.size())));
  std::vector<bool> bits(free.size(), false);
  while (true) {
    PlausibleProfile pp{base, uniform ? uniform_prob : Probability::one()};
    for (std::size_t j = 0; j < free.size(); ++j) {
      const auto& p = model.p[free[j].voter][free[j].cand];
      if (bits[j]) {
        pp.profile[free[j].voter].insert(free[j].cand);
        if (!uniform) pp.prob *= p;
      } else if (!uniform) {
        pp.prob *= p.complement();
      }
    }
    if (!invoke_visitor(f, pp)) return false;
    std::size_t j = free.size();
    while (j > 0) {
      --j;
      if (!bits[j]) {
        bits[j] = true;
        break;
      }
      bits[j] = false;
      if (j == 0) return true;
    }
    if (free.empty()) return true;
  }
}

}  // namespace detail

/// Visits every plausible profile exactly once with its exact probability.
/// Order: Joint in entry order; Lottery as an odometer over per-voter set
/// choices (voter 0 slowest); CP/3VA as a binary counter over free pairs
/// sorted by (voter, candidate), "disapprove" first. The visitor may return
/// bool; false stops the enumeration. Returns false iff stopped early.
template <class F>
bool for_each_plausible(const Model& model, const Budget& budget, F&& f) {
  detail::check_budget(plausible_count(model), budget);
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, JointModel>) {
          for (const auto& e : x.entries)
            if (!detail::invoke_visitor(f, PlausibleProfile{e.profile, e.prob})) return false;
          return true;
        } else if constexpr (std::is_same_v<T, LotteryModel>) {
          return detail::enumerate_lottery(x, f);
        } else if constexpr (std::is_same_v<T, CandidateProbModel>) {
          return detail::enumerate_cp(x, f);
        } else {
          return detail::enumerate_cp(tva_to_cp(x), f);
        }
      },
      model);
}

inline std::vector<PlausibleProfile> enumerate_plausible(const Model& model, const Budget& budget = {}) {
  std::vector<PlausibleProfile> out;
  for_each_plausible(model, budget, [&](const PlausibleProfile& pp) { out.push_back(pp); });
  return out;
}

/// First plausible profile in enumeration order, computed without a budget.
inline PlausibleProfile first_plausible(const Model& model) {
  return std::visit(
      [](const auto& x) -> PlausibleProfile {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, JointModel>) {
          return {x.entries.front().profile, x.entries.front().prob};
        } else if constexpr (std::is_same_v<T, LotteryModel>) {
          PlausibleProfile pp{ApprovalProfile(x.n), Probability::one()};
          for (std::size_t i = 0; i < x.n; ++i) {
            pp.profile[i] = x.voters[i].front().set;
            pp.prob *= x.voters[i].front().prob;
          }
          return pp;
        } else {
          CandidateProbModel cp;
          if constexpr (std::is_same_v<T, ThreeValuedModel>) cp = tva_to_cp(x);
          else cp = x;
          PlausibleProfile pp{ApprovalProfile(cp.n), Probability::one()};
          for (std::size_t i = 0; i < cp.n; ++i)
            for (std::size_t c = 0; c < cp.m; ++c) {
              if (cp.p[i][c].is_one()) pp.profile[i].insert(static_cast<Candidate>(c));
              if (cp.p[i][c].is_interior()) pp.prob *= cp.p[i][c].complement();
            }
          return pp;
        }
      },
      model);
}

/// Exact probability of one profile under the model; 0 if not plausible.
inline Probability profile_probability(const Model& model, const ApprovalProfile& profile) {
  if (profile.size() != model_voters(model)) return Probability::zero();
  return std::visit(
      [&](const auto& x) -> Probability {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, JointModel>) {
          for (const auto& e : x.entries)
            if (e.profile == profile) return e.prob;
          return Probability::zero();
        } else if constexpr (std::is_same_v<T, LotteryModel>) {
          Probability prob = Probability::one();
          for (std::size_t i = 0; i < x.n; ++i) {
            const WeightedSet* hit = nullptr;
            for (const auto& ws : x.voters[i])
              if (ws.set == profile[i]) hit = &ws;
            if (!hit) return Probability::zero();
            prob *= hit->prob;
          }
          return prob;
        } else {
          CandidateProbModel cp;
          if constexpr (std::is_same_v<T, ThreeValuedModel>) cp = tva_to_cp(x);
          else cp = x;
          Probability prob = Probability::one();
          for (std::size_t i = 0; i < cp.n; ++i) {
            if (profile[i].bound() > cp.m) return Probability::zero();
            for (std::size_t c = 0; c < cp.m; ++c)
              prob *= profile[i].contains(static_cast<Candidate>(c)) ? cp.p[i][c]
                                                                      : cp.p[i][c].complement();
            if (prob.is_zero()) return prob;
          }
          return prob;
        }
      },
      model);
}

/// Cartesian product of per-voter supports, each profile weighted by the
/// product of its voters' set probabilities. Profiles appear in lottery
/// enumeration order.
inline JointModel lottery_to_joint(const LotteryModel& model, const Budget& budget = {}) {
  JointModel out{model.n, model.m, {}};
  for_each_plausible(Model{model}, budget, [&](const PlausibleProfile& pp) {
    out.entries.push_back({pp.prob, pp.profile});
  });
  return out;
}

}  // namespace abcu
