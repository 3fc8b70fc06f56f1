#pragma once

// Instance generators: the 3-SAT -> possible-JR (Lottery) gadget, the
// vertex-cover -> JR-counting (3VA) gadget, and seeded random models.

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "abcu/uncertainty.hpp"

namespace abcu {

/// 3-CNF formula; literals are +v / -v for variables v in 1..variables.
struct CnfFormula {
  std::size_t variables = 0;
  std::vector<std::array<int, 3>> clauses;
};

/// Simple undirected graph on vertices 0..vertices-1.
struct Graph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// An instance plus the committee the gadget is about. `labels[c]` names
/// candidate c after its role in the construction.
struct ReducedInstance {
  Instance inst;
  Model model;
  Committee committee;
  std::vector<std::string> labels;
};

inline void check_formula(const CnfFormula& f) {
  if (f.clauses.empty()) throw PreconditionError("formula has no clauses");
  if (f.clauses.size() % 2 != 0)
    throw PreconditionError("formula needs an even number of clauses, got " +
                            std::to_string(f.clauses.size()));
  for (const auto& clause : f.clauses)
    for (int lit : clause)
      if (lit == 0 || static_cast<std::size_t>(lit < 0 ? -lit : lit) > f.variables)
        throw PreconditionError("literal " + std::to_string(lit) + " out of range");
}

/// One voter per clause and k = n/2. Candidate ids: literal occurrences
/// l_1..l_3n first (id g-1 for l_g), then one clash candidate c_{g,h} for each
/// pair g < h of complementary literals in different clauses (ordered by
/// (g, h)), then the k dummy candidates forming the committee. Voter i's j-th
/// set is {l_g} plus the clash candidates touching g, g = 3(i-1)+j; each set
/// has probability 1/3. The formula is satisfiable iff the committee is
/// possibly JR.
inline ReducedInstance reduce_3sat(const CnfFormula& f) {
  check_formula(f);
  const std::size_t n = f.clauses.size();
  const std::size_t k = n / 2;
  const std::size_t literals = 3 * n;

  auto lit_at = [&](std::size_t g) { return f.clauses[g / 3][g % 3]; };  // g is 0-based
  std::vector<std::pair<std::size_t, std::size_t>> clashes;
  for (std::size_t g = 0; g < literals; ++g)
    for (std::size_t h = g + 1; h < literals; ++h)
      if (g / 3 != h / 3 && lit_at(g) == -lit_at(h)) clashes.emplace_back(g, h);

  const std::size_t m = literals + clashes.size() + k;
  std::vector<std::string> labels;
  for (std::size_t g = 0; g < literals; ++g) labels.push_back("l" + std::to_string(g + 1));
  for (auto [g, h] : clashes)
    labels.push_back("c" + std::to_string(g + 1) + "," + std::to_string(h + 1));
  for (std::size_t d = 0; d < k; ++d) labels.push_back("c" + std::to_string(d + 1));

  LotteryModel model{n, m, {}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<WeightedSet> lottery;
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t g = 3 * i + j;
      ApprovalSet s{static_cast<Candidate>(g)};
      for (std::size_t x = 0; x < clashes.size(); ++x)
        if (clashes[x].first == g || clashes[x].second == g)
          s.insert(static_cast<Candidate>(literals + x));
      lottery.push_back({Probability(1, 3), std::move(s)});
    }
    model.voters.push_back(std::move(lottery));
  }

  Committee w;
  for (std::size_t d = 0; d < k; ++d) w.insert(static_cast<Candidate>(literals + clashes.size() + d));
  return {Instance(n, m, k), Model{std::move(model)}, std::move(w), std::move(labels)};
}

inline void check_graph(const Graph& g) {
  if (g.vertices == 0 || g.vertices % 2 != 0)
    throw PreconditionError("graph needs a positive even vertex count, got " +
                            std::to_string(g.vertices));
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [u, v] : g.edges) {
    if (u >= g.vertices || v >= g.vertices) throw PreconditionError("edge endpoint out of range");
    if (u == v) throw PreconditionError("self-loop on vertex " + std::to_string(u));
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
      throw PreconditionError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
  }
}

/// One voter per vertex, k = n/2. Candidates: one per edge (sorted by
/// endpoints), approved with certainty by exactly its two endpoints, then
/// c+_1..c+_k. Every voter approves c+_1 with probability 1/2 and nothing else
/// in C+. With w = C+, the completions in which w is JR correspond one-to-one
/// to the vertex covers of the graph.
inline ReducedInstance reduce_vc(const Graph& g) {
  check_graph(g);
  const std::size_t n = g.vertices;
  const std::size_t k = n / 2;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto [u, v] : g.edges) edges.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(edges.begin(), edges.end());
  const std::size_t m = edges.size() + k;

  ThreeValuedModel model{n, m, std::vector<std::vector<Tri>>(n, std::vector<Tri>(m, Tri::disapprove))};
  std::vector<std::string> labels;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    model.t[edges[e].first][e] = Tri::approve;
    model.t[edges[e].second][e] = Tri::approve;
    labels.push_back("c" + std::to_string(edges[e].first + 1) + "," + std::to_string(edges[e].second + 1));
  }
  for (std::size_t i = 0; i < n; ++i) model.t[i][edges.size()] = Tri::unknown;
  Committee w;
  for (std::size_t j = 0; j < k; ++j) {
    w.insert(static_cast<Candidate>(edges.size() + j));
    labels.push_back("c+" + std::to_string(j + 1));
  }
  return {Instance(n, m, k), Model{std::move(model)}, std::move(w), std::move(labels)};
}

// ---------------------------------------------------------------------------
// Random models
// ---------------------------------------------------------------------------

/// SplitMix64; fixed output sequence per seed on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
  bool coin() { return next() >> 63; }

 private:
  std::uint64_t state_;
};

struct GenParams {
  ModelKind kind = ModelKind::tva;
  std::size_t n = 3;
  std::size_t m = 3;
  std::size_t k = 1;
  /// 3VA / CP: number of uncertain cells. Lottery: each voter's support has
  /// 1..degree+1 sets. Joint: degree+1 profiles. Zero means fully certain.
  std::size_t degree = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline ApprovalSet random_set(SplitMix64& rng, std::size_t m) {
  ApprovalSet s;
  for (std::size_t c = 0; c < m; ++c)
    if (rng.coin()) s.insert(static_cast<Candidate>(c));
  return s;
}

inline std::vector<Probability> random_weights(SplitMix64& rng, std::size_t count) {
  std::vector<std::uint64_t> w(count);
  std::uint64_t total = 0;
  for (auto& x : w) total += (x = 1 + rng.below(4));
  std::vector<Probability> out;
  for (auto x : w) out.emplace_back(Rational(x, total));
  return out;
}

inline std::vector<std::size_t> random_cells(SplitMix64& rng, std::size_t cells, std::size_t pick) {
  std::vector<std::size_t> all(cells);
  for (std::size_t i = 0; i < cells; ++i) all[i] = i;
  for (std::size_t i = 0; i < pick; ++i) std::swap(all[i], all[i + rng.below(cells - i)]);
  all.resize(pick);
  return all;
}

}  // namespace detail

/// Reproducible random valid model: equal parameters give equal models.
inline std::pair<Instance, Model> gen_random(const GenParams& params) {
  const Instance inst(params.n, params.m, params.k);
  SplitMix64 rng(params.seed);
  const std::size_t n = params.n, m = params.m;
  const std::size_t cells = n * m;

  switch (params.kind) {
    case ModelKind::tva: {
      if (params.degree > cells) throw PreconditionError("more unknown cells than n*m");
      ThreeValuedModel model{n, m, std::vector<std::vector<Tri>>(n, std::vector<Tri>(m))};
      for (auto& row : model.t)
        for (auto& t : row) t = rng.coin() ? Tri::approve : Tri::disapprove;
      for (auto cell : detail::random_cells(rng, cells, params.degree))
        model.t[cell / m][cell % m] = Tri::unknown;
      return {inst, Model{std::move(model)}};
    }
    case ModelKind::cp: {
      if (params.degree > cells) throw PreconditionError("more uncertain cells than n*m");
      CandidateProbModel model{n, m, std::vector<std::vector<Probability>>(n, std::vector<Probability>(m))};
      for (auto& row : model.p)
        for (auto& p : row) p = rng.coin() ? Probability::one() : Probability::zero();
      for (auto cell : detail::random_cells(rng, cells, params.degree)) {
        const long den = 2 + static_cast<long>(rng.below(9));
        const long num = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(den - 1)));
        model.p[cell / m][cell % m] = Probability(num, den);
      }
      return {inst, Model{std::move(model)}};
    }
    case ModelKind::lottery: {
      LotteryModel model{n, m, {}};
      const BigInt distinct_sets = pow2(m);
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t size = 1 + rng.below(params.degree + 1);
        if (distinct_sets < size) size = static_cast<std::size_t>(distinct_sets);
        std::set<ApprovalSet> chosen;
        std::vector<ApprovalSet> order;
        while (order.size() < size) {
          auto s = detail::random_set(rng, m);
          if (chosen.insert(s).second) order.push_back(std::move(s));
        }
        auto weights = detail::random_weights(rng, size);
        std::vector<WeightedSet> lottery;
        for (std::size_t r = 0; r < size; ++r) lottery.push_back({weights[r], std::move(order[r])});
        model.voters.push_back(std::move(lottery));
      }
      return {inst, Model{std::move(model)}};
    }
    case ModelKind::joint: {
      const std::size_t count = params.degree + 1;
      if (cells < 63 && count > (std::size_t{1} << cells))
        throw PreconditionError("more profiles requested than exist");
      JointModel model{n, m, {}};
      std::set<ApprovalProfile> chosen;
      std::vector<ApprovalProfile> order;
      while (order.size() < count) {
        ApprovalProfile profile(n);
        for (auto& s : profile) s = detail::random_set(rng, m);
        if (chosen.insert(profile).second) order.push_back(std::move(profile));
      }
      auto weights = detail::random_weights(rng, count);
      for (std::size_t r = 0; r < count; ++r) model.entries.push_back({weights[r], std::move(order[r])});
      return {inst, Model{std::move(model)}};
    }
  }
  throw PreconditionError("unknown model kind");
}

}  // namespace abcu
