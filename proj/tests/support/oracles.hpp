#pragma once

// Brute-force reference implementations used only by the tests. They follow
// the textbook definitions directly (voter-subset enumeration, full profile
// enumeration, truth-table SAT) and share no code paths with the library
// beyond the plain data types.

#include <cstdint>
#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "abcu/abcu.hpp"

namespace abcu::oracle {

/// JR by definition: every group of >= n/k voters with a common approved
/// candidate has a member approving someone in w.
inline bool jr(const Instance& inst, const ApprovalProfile& profile, const Committee& w) {
  const std::size_t n = inst.voters();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size * inst.committee_size() < n) continue;
    bool first = true, represented = false;
    CandidateSet common;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1)) continue;
      common = first ? profile[i] : (common & profile[i]);
      first = false;
      represented = represented || profile[i].intersects(w);
    }
    if (!common.empty() && !represented) return false;
  }
  return true;
}

/// Cohesive-group definitions of PJR (union) and EJR (single member).
inline bool cohesive_axiom(const Instance& inst, const ApprovalProfile& profile, const Committee& w,
                           bool ejr) {
  const std::size_t n = inst.voters();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    CandidateSet common, joint;
    bool first = true;
    std::size_t best_single = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!((mask >> i) & 1)) continue;
      common = first ? profile[i] : (common & profile[i]);
      first = false;
      joint |= profile[i];
      best_single = std::max(best_single, profile[i].intersection_size(w));
    }
    for (std::size_t ell = 1; ell <= inst.committee_size(); ++ell) {
      if (size * inst.committee_size() < ell * n || common.size() < ell) continue;
      const std::size_t got = ejr ? best_single : joint.intersection_size(w);
      if (got < ell) return false;
    }
  }
  return true;
}

inline bool pjr(const Instance& inst, const ApprovalProfile& p, const Committee& w) {
  return cohesive_axiom(inst, p, w, false);
}
inline bool ejr(const Instance& inst, const ApprovalProfile& p, const Committee& w) {
  return cohesive_axiom(inst, p, w, true);
}

inline bool axiom(Axiom a, const Instance& inst, const ApprovalProfile& p, const Committee& w) {
  switch (a) {
    case Axiom::jr: return jr(inst, p, w);
    case Axiom::pjr: return pjr(inst, p, w);
    case Axiom::ejr: return ejr(inst, p, w);
  }
  return false;
}

/// Every profile over n voters and m candidates (2^(n*m) of them), with its
/// probability under the model computed straight from the model definition.
/// Zero-probability profiles are dropped.
inline std::map<ApprovalProfile, Rational> distribution(const Model& model) {
  const std::size_t n = model_voters(model), m = model_candidates(model);
  std::map<ApprovalProfile, Rational> out;
  if (auto* joint = std::get_if<JointModel>(&model)) {
    for (const auto& e : joint->entries) out[e.profile] += e.prob.value();
    return out;
  }
  if (auto* lottery = std::get_if<LotteryModel>(&model)) {
    // Odometer over per-voter choices.
    std::vector<std::size_t> pick(n, 0);
    while (true) {
      ApprovalProfile profile(n);
      Rational prob = 1;
      for (std::size_t i = 0; i < n; ++i) {
        profile[i] = lottery->voters[i][pick[i]].set;
        prob *= lottery->voters[i][pick[i]].prob.value();
      }
      out[profile] += prob;
      std::size_t i = 0;
      while (i < n && ++pick[i] == lottery->voters[i].size()) pick[i++] = 0;
      if (i == n) return out;
    }
  }
  auto cell = [&](std::size_t i, std::size_t c) -> Rational {
    if (auto* cp = std::get_if<CandidateProbModel>(&model)) return cp->p[i][c].value();
    switch (std::get<ThreeValuedModel>(model).t[i][c]) {
      case Tri::disapprove: return 0;
      case Tri::unknown: return Rational(1, 2);
      case Tri::approve: return 1;
    }
    return 0;
  };
  // Depth-first over every cell, dropping branches whose probability is 0.
  ApprovalProfile profile(n);
  auto walk = [&](auto&& self, std::size_t x, const Rational& prob) -> void {
    if (x == n * m) {
      out[profile] += prob;
      return;
    }
    const std::size_t i = x / m;
    const auto c = static_cast<Candidate>(x % m);
    const Rational p = cell(i, c);
    if (p != 1) self(self, x + 1, prob * (1 - p));
    if (p != 0) {
      profile[i].insert(c);
      self(self, x + 1, prob * p);
      profile[i].erase(c);
    }
  };
  walk(walk, 0, Rational(1));
  return out;
}

inline Rational axiom_probability(Axiom a, const Instance& inst, const Model& model, const Committee& w) {
  Rational total = 0;
  for (const auto& [profile, prob] : distribution(model))
    if (axiom(a, inst, profile, w)) total += prob;
  return total;
}

inline bool satisfiable(const CnfFormula& f) {
  for (std::uint64_t assign = 0; assign < (std::uint64_t{1} << f.variables); ++assign) {
    bool all = true;
    for (const auto& clause : f.clauses) {
      bool any = false;
      for (int lit : clause) {
        const bool value = (assign >> (std::abs(lit) - 1)) & 1;
        any = any || (lit > 0 ? value : !value);
      }
      all = all && any;
    }
    if (all) return true;
  }
  return false;
}

inline std::size_t vertex_covers(const Graph& g) {
  std::size_t count = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.vertices); ++s) {
    bool cover = true;
    for (auto [u, v] : g.edges) cover = cover && (((s >> u) & 1) || ((s >> v) & 1));
    count += cover;
  }
  return count;
}

/// Random deterministic profile for property tests.
inline ApprovalProfile random_profile(SplitMix64& rng, std::size_t n, std::size_t m) {
  ApprovalProfile profile(n);
  for (auto& s : profile)
    for (std::size_t c = 0; c < m; ++c)
      if (rng.below(3) == 0) s.insert(static_cast<Candidate>(c));
  return profile;
}

inline Committee random_committee(SplitMix64& rng, std::size_t m, std::size_t k) {
  Committee w;
  while (w.size() < k) w.insert(static_cast<Candidate>(rng.below(m)));
  return w;
}

}  // namespace abcu::oracle

namespace abcu::oracle {

/// Small random model of the given kind with a handful of plausible profiles.
struct RandomModel {
  Instance inst;
  Model model;
};

inline RandomModel random_model(SplitMix64& rng, ModelKind kind, std::size_t max_n = 5,
                                std::size_t max_m = 5) {
  const std::size_t n = 1 + rng.below(max_n), m = 1 + rng.below(max_m);
  const std::size_t k = 1 + rng.below(m);
  std::size_t degree = 0;
  switch (kind) {
    case ModelKind::tva:
    case ModelKind::cp: degree = rng.below(std::min<std::size_t>(n * m, 3) + 1); break;
    case ModelKind::lottery: degree = rng.below(3); break;
    case ModelKind::joint: degree = rng.below(std::min<std::size_t>((std::size_t{1} << (n * m)) - 1, 5) + 1); break;
  }
  auto [inst, model] = gen_random({kind, n, m, k, degree, rng.next()});
  return {inst, std::move(model)};
}

/// Lottery where every plausible set is a singleton.
inline LotteryModel random_singleton_lottery(SplitMix64& rng, std::size_t n, std::size_t m) {
  LotteryModel model{n, m, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t size = 1 + rng.below(std::min<std::size_t>(m, 3));
    std::vector<Candidate> picks;
    while (picks.size() < size) {
      auto c = static_cast<Candidate>(rng.below(m));
      if (std::find(picks.begin(), picks.end(), c) == picks.end()) picks.push_back(c);
    }
    std::vector<WeightedSet> lottery;
    for (std::size_t r = 0; r < size; ++r)
      lottery.push_back({Probability(Rational(1, static_cast<long>(size))), ApprovalSet{picks[r]}});
    model.voters.push_back(std::move(lottery));
  }
  return model;
}

/// CP model with every entry strictly between 0 and 1.
inline CandidateProbModel random_interior_cp(SplitMix64& rng, std::size_t n, std::size_t m) {
  CandidateProbModel model{n, m, std::vector<std::vector<Probability>>(n)};
  for (auto& row : model.p)
    for (std::size_t c = 0; c < m; ++c) {
      const long den = 2 + static_cast<long>(rng.below(7));
      row.emplace_back(1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(den - 1))), den);
    }
  return model;
}

using Distribution = std::map<ApprovalProfile, Rational>;

inline bool possibly(Axiom a, const Instance& inst, const Distribution& dist, const Committee& w) {
  for (const auto& [profile, prob] : dist)
    if (axiom(a, inst, profile, w)) return true;
  return false;
}

inline bool necessarily(Axiom a, const Instance& inst, const Distribution& dist, const Committee& w) {
  for (const auto& [profile, prob] : dist)
    if (!axiom(a, inst, profile, w)) return false;
  return true;
}

inline bool possibly(Axiom a, const Instance& inst, const Model& model, const Committee& w) {
  return possibly(a, inst, distribution(model), w);
}

inline bool necessarily(Axiom a, const Instance& inst, const Model& model, const Committee& w) {
  return necessarily(a, inst, distribution(model), w);
}

/// Lexicographically first committee that is necessarily `a`, by brute force.
inline std::optional<Committee> first_necessary(Axiom a, const Instance& inst, const Model& model) {
  std::optional<Committee> out;
  const auto dist = distribution(model);
  for_each_committee(inst, Budget{}, [&](const Committee& w) {
    for (const auto& [profile, prob] : dist)
      if (!axiom(a, inst, profile, w)) return true;
    out = w;
    return false;
  });
  return out;
}

}  // namespace abcu::oracle
