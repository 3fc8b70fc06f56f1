#pragma once

// Deterministic JR / PJR / EJR checkers with violation witnesses, and the
// greedy JR committee.

#include <optional>
#include <string>
#include <vector>

#include "abcu/core.hpp"

namespace abcu {

enum class Axiom { jr, pjr, ejr };

inline std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::jr: return "jr";
    case Axiom::pjr: return "pjr";
    case Axiom::ejr: return "ejr";
  }
  return "?";
}

inline Axiom parse_axiom(std::string_view s) {
  if (s == "jr") return Axiom::jr;
  if (s == "pjr") return Axiom::pjr;
  if (s == "ejr") return Axiom::ejr;
  throw InputError("unknown axiom \"" + std::string(s) + "\"");
}

/// An ell-cohesive group the committee fails to represent.
struct Violation {
  Axiom axiom = Axiom::jr;
  std::size_t ell = 1;
  std::vector<Voter> group;  // ascending
  CandidateSet common;       // |common| >= ell, approved by every member of group

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct AxiomCheck {
  bool holds = true;
  std::optional<Violation> violation;

  explicit operator bool() const noexcept { return holds; }
};

namespace detail {

inline std::vector<Voter> unrepresented(const ApprovalProfile& profile, const Committee& w) {
  std::vector<Voter> out;
  for (std::size_t i = 0; i < profile.size(); ++i)
    if (!profile[i].intersects(w)) out.push_back(static_cast<Voter>(i));
  return out;
}

// JR scan without the |w| = k check; size_jr reuses it for smaller committees.
inline AxiomCheck find_jr_violation(const Instance& inst, const ApprovalProfile& profile,
                                    const Committee& w) {
  const auto free_voters = unrepresented(profile, w);
  for (Candidate c = 0; c < inst.candidates(); ++c) {
    if (w.contains(c)) continue;
    std::vector<Voter> group;
    for (Voter i : free_voters)
      if (profile[i].contains(c)) group.push_back(i);
    if (!group.empty() && meets_threshold(group.size(), 1, inst))
      return {false, Violation{Axiom::jr, 1, std::move(group), CandidateSet{c}}};
  }
  return {};
}

// Depth-first enumeration of candidate sets T (|T| = ell, ascending ids)
// restricted to candidates, tracking the voters approving all of T. Calls
// visit(T, approvers) in lexicographic order of T; stops when visit returns
// false. Branches whose approver set already misses the ell-threshold are cut.
template <class Visit>
bool for_each_cohesive_core(const Instance& inst, const ApprovalProfile& profile, std::size_t ell,
                            std::vector<Voter> pool, Visit&& visit) {
  std::vector<Candidate> chosen;
  auto rec = [&](auto&& self, Candidate start, const std::vector<Voter>& approvers) -> bool {
    if (chosen.size() == ell) {
      CandidateSet t;
      for (auto c : chosen) t.insert(c);
      return visit(static_cast<const CandidateSet&>(t), approvers);
    }
    for (Candidate c = start; c < inst.candidates(); ++c) {
      if (inst.candidates() - c < ell - chosen.size()) break;
      std::vector<Voter> next;
      for (Voter i : approvers)
        if (profile[i].contains(c)) next.push_back(i);
      if (next.empty() || !meets_threshold(next.size(), ell, inst)) continue;
      chosen.push_back(c);
      const bool go_on = self(self, c + 1, next);
      chosen.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  return rec(rec, 0, pool);
}

}  // namespace detail

/// JR check: w fails iff some c outside w has at least n/k approvers among
/// the voters that w leaves unrepresented. The witness is the lowest such c.
inline AxiomCheck is_jr(const Instance& inst, const ApprovalProfile& profile, const Committee& w) {
  check_committee(inst, w);
  check_profile(inst, profile);
  return detail::find_jr_violation(inst, profile, w);
}

/// EJR check by enumerating candidate sets T of size ell. For fixed T the
/// voters approving T with fewer than ell committee members form the largest
/// violating group, so the scan is exact. First witness in (ell, T) order.
inline AxiomCheck is_ejr(const Instance& inst, const ApprovalProfile& profile, const Committee& w) {
  check_committee(inst, w);
  check_profile(inst, profile);
  for (std::size_t ell = 1; ell <= inst.committee_size(); ++ell) {
    std::vector<Voter> pool;
    for (std::size_t i = 0; i < profile.size(); ++i)
      if (profile[i].intersection_size(w) < ell) pool.push_back(static_cast<Voter>(i));
    if (pool.empty() || !meets_threshold(pool.size(), ell, inst)) continue;
    std::optional<Violation> found;
    detail::for_each_cohesive_core(inst, profile, ell, pool,
                                   [&](const CandidateSet& t, const std::vector<Voter>& group) {
                                     found = Violation{Axiom::ejr, ell, group, t};
                                     return false;
                                   });
    if (found) return {false, std::move(found)};
  }
  return {};
}

/// PJR check. For each ell and each T with an ell-cohesive approver set P,
/// searches subsets of P of the minimal qualifying size ceil(ell*n/k) for one
/// whose joint approvals hit fewer than ell committee members. Exponential in
/// |P|; intended for small instances.
inline AxiomCheck is_pjr(const Instance& inst, const ApprovalProfile& profile, const Committee& w) {
  check_committee(inst, w);
  check_profile(inst, profile);
  for (std::size_t ell = 1; ell <= inst.committee_size(); ++ell) {
    const std::size_t need = min_group_size(ell, inst);
    if (need > inst.voters()) break;
    // A voter seeing >= ell committee members can never be in a violating group.
    std::vector<Voter> pool;
    for (std::size_t i = 0; i < profile.size(); ++i)
      if (profile[i].intersection_size(w) < ell) pool.push_back(static_cast<Voter>(i));
    if (pool.size() < need) continue;

    std::optional<Violation> found;
    detail::for_each_cohesive_core(
        inst, profile, ell, pool, [&](const CandidateSet& t, const std::vector<Voter>& approvers) {
          if (approvers.size() < need) return true;
          for_each_combination(approvers.size(), need, [&](const std::vector<std::size_t>& idx) {
            CandidateSet covered;
            for (auto j : idx) covered |= profile[approvers[j]] & w;
            if (covered.size() < ell) {
              std::vector<Voter> group;
              for (auto j : idx) group.push_back(approvers[j]);
              found = Violation{Axiom::pjr, ell, std::move(group), t};
              return false;
            }
            return true;
          });
          return !found;
        });
    if (found) return {false, std::move(found)};
  }
  return {};
}

inline AxiomCheck check_axiom(Axiom axiom, const Instance& inst, const ApprovalProfile& profile,
                              const Committee& w) {
  switch (axiom) {
    case Axiom::jr: return is_jr(inst, profile, w);
    case Axiom::pjr: return is_pjr(inst, profile, w);
    case Axiom::ejr: return is_ejr(inst, profile, w);
  }
  return {};
}

/// Greedy committee that always satisfies JR: repeatedly take the candidate
/// with most still-unrepresented approvers (lowest id on ties) while that
/// count reaches n/k, then pad with the lowest unused ids.
inline Committee greedy_jr_committee(const Instance& inst, const ApprovalProfile& profile) {
  check_profile(inst, profile);
  Committee w;
  std::vector<bool> represented(inst.voters(), false);
  while (w.size() < inst.committee_size()) {
    std::size_t best_count = 0;
    std::optional<Candidate> best;
    for (Candidate c = 0; c < inst.candidates(); ++c) {
      if (w.contains(c)) continue;
      std::size_t count = 0;
      for (std::size_t i = 0; i < inst.voters(); ++i)
        if (!represented[i] && profile[i].contains(c)) ++count;
      if (count > best_count) {
        best_count = count;
        best = c;
      }
    }
    if (!best || !meets_threshold(best_count, 1, inst)) break;
    w.insert(*best);
    for (std::size_t i = 0; i < inst.voters(); ++i)
      if (profile[i].contains(*best)) represented[i] = true;
  }
  for (Candidate c = 0; w.size() < inst.committee_size(); ++c)
    if (!w.contains(c)) w.insert(c);
  return w;
}

}  // namespace abcu
