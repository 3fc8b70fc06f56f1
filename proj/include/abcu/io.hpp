#pragma once

// JSON documents for instances and models, plus the DIMACS-style CNF and
// graph readers used by the reductions.

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abcu/reductions.hpp"
#include "abcu/uncertainty.hpp"

namespace abcu {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

struct Document {
  Instance inst{1, 1, 1};
  Model model;
  std::optional<Committee> committee;
  std::vector<std::string> labels;  // optional candidate names
  json query = json::object();      // free-form query parameters, e.g. {"r": 1}

  friend bool operator==(const Document& a, const Document& b) {
    return a.inst == b.inst && a.model == b.model && a.committee == b.committee &&
           a.labels == b.labels && a.query == b.query;
  }
};

namespace detail {

[[noreturn]] inline void schema_error(const std::string& path, const std::string& msg) {
  throw InputError(path + ": " + msg);
}

inline const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) schema_error(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(path, std::string("missing \"") + key + "\"");
  return *it;
}

inline std::size_t read_count(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) schema_error(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline Rational read_rational(const json& j, const std::string& path) {
  try {
    if (j.is_string()) return Probability::parse_rational(j.get<std::string>());
    if (j.is_number_unsigned()) return Rational(j.get<std::uint64_t>());
    // Floats are read through their shortest decimal spelling, so 0.6 is 3/5.
    if (j.is_number_float()) return Probability::parse_rational(j.dump());
  } catch (const InputError& e) {
    schema_error(path, e.what());
  }
  schema_error(path, "expected a probability (\"num/den\", decimal string, or number)");
}

inline Probability read_probability(const json& j, const std::string& path) {
  auto r = read_rational(j, path);
  if (r < 0 || r > 1) schema_error(path, "probability " + r.str() + " outside [0,1]");
  return Probability(r);
}

inline ApprovalSet read_set(const json& j, const std::string& path, std::size_t m) {
  if (!j.is_array()) schema_error(path, "expected an array of candidate ids");
  std::vector<Candidate> members;
  for (std::size_t x = 0; x < j.size(); ++x) {
    const auto at = path + "[" + std::to_string(x) + "]";
    if (!j[x].is_number_unsigned()) schema_error(at, "expected a candidate id");
    auto c = j[x].get<std::uint64_t>();
    if (c >= m) schema_error(at, "candidate " + std::to_string(c) + " >= m=" + std::to_string(m));
    members.push_back(static_cast<Candidate>(c));
  }
  return CandidateSet::from_members(members, m);
}

inline const json& read_array(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
  return j;
}

inline json emit_set(const CandidateSet& s) { return json(s.members()); }

}  // namespace detail

/// Parses and validates a document. Errors name the JSON path at fault.
inline Document parse_document(const json& doc) {
  using namespace detail;
  if (doc.contains("format_version")) {
    const auto& v = doc["format_version"];
    if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
      schema_error("$.format_version", "unsupported version (expected " + std::to_string(kFormatVersion) + ")");
  }
  const auto& ji = member(doc, "$", "instance");
  const std::size_t n = read_count(member(ji, "$.instance", "n"), "$.instance.n");
  const std::size_t m = read_count(member(ji, "$.instance", "m"), "$.instance.m");
  const std::size_t k = read_count(member(ji, "$.instance", "k"), "$.instance.k");
  Document out;
  try {
    out.inst = Instance(n, m, k);
  } catch (const InputError& e) {
    schema_error("$.instance", e.what());
  }

  const auto& jm = member(doc, "$", "model");
  const auto& jkind = member(jm, "$.model", "kind");
  if (!jkind.is_string()) schema_error("$.model.kind", "expected a string");
  ModelKind kind;
  try {
    kind = parse_model_kind(jkind.get<std::string>());
  } catch (const InputError& e) {
    schema_error("$.model.kind", e.what());
  }

  switch (kind) {
    case ModelKind::joint: {
      JointModel model{n, m, {}};
      const auto& entries = read_array(member(jm, "$.model", "profiles"), "$.model.profiles");
      for (std::size_t r = 0; r < entries.size(); ++r) {
        const auto path = "$.model.profiles[" + std::to_string(r) + "]";
        WeightedProfile wp{read_probability(member(entries[r], path, "p"), path + ".p"), {}};
        const auto& sets = read_array(member(entries[r], path, "sets"), path + ".sets");
        for (std::size_t i = 0; i < sets.size(); ++i)
          wp.profile.push_back(read_set(sets[i], path + ".sets[" + std::to_string(i) + "]", m));
        model.entries.push_back(std::move(wp));
      }
      out.model = std::move(model);
      break;
    }
    case ModelKind::lottery: {
      LotteryModel model{n, m, {}};
      const auto& voters = read_array(member(jm, "$.model", "voters"), "$.model.voters");
      for (std::size_t i = 0; i < voters.size(); ++i) {
        const auto vpath = "$.model.voters[" + std::to_string(i) + "]";
        const auto& lottery = read_array(voters[i], vpath);
        std::vector<WeightedSet> sets;
        for (std::size_t r = 0; r < lottery.size(); ++r) {
          const auto path = vpath + "[" + std::to_string(r) + "]";
          sets.push_back({read_probability(member(lottery[r], path, "p"), path + ".p"),
                          read_set(member(lottery[r], path, "set"), path + ".set", m)});
        }
        model.voters.push_back(std::move(sets));
      }
      out.model = std::move(model);
      break;
    }
    case ModelKind::cp: {
      CandidateProbModel model{n, m, {}};
      const auto& rows = read_array(member(jm, "$.model", "p"), "$.model.p");
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto rpath = "$.model.p[" + std::to_string(i) + "]";
        std::vector<Probability> row;
        for (std::size_t c = 0; c < read_array(rows[i], rpath).size(); ++c)
          row.push_back(read_probability(rows[i][c], rpath + "[" + std::to_string(c) + "]"));
        model.p.push_back(std::move(row));
      }
      out.model = std::move(model);
      break;
    }
    case ModelKind::tva: {
      ThreeValuedModel model{n, m, {}};
      const auto& rows = read_array(member(jm, "$.model", "t"), "$.model.t");
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto rpath = "$.model.t[" + std::to_string(i) + "]";
        std::vector<Tri> row;
        for (std::size_t c = 0; c < read_array(rows[i], rpath).size(); ++c) {
          const auto path = rpath + "[" + std::to_string(c) + "]";
          try {
            row.push_back(tri_from_rational(read_rational(rows[i][c], path)));
          } catch (const InputError& e) {
            if (std::string(e.what()).rfind("$", 0) == 0) throw;
            schema_error(path, e.what());
          }
        }
        model.t.push_back(std::move(row));
      }
      out.model = std::move(model);
      break;
    }
  }

  if (auto errors = validate(out.inst, out.model); !errors.empty()) {
    std::string msg = "$.model: invalid model";
    for (auto& e : errors) msg += "\n  " + e;
    throw InputError(msg);
  }

  if (doc.contains("committee")) {
    auto w = read_set(doc["committee"], "$.committee", m);
    if (w.size() != doc["committee"].size()) schema_error("$.committee", "duplicate candidate");
    if (w.size() != k)
      schema_error("$.committee", "has " + std::to_string(w.size()) + " members, expected k=" + std::to_string(k));
    out.committee = std::move(w);
  }
  if (doc.contains("labels")) {
    const auto& labels = read_array(doc["labels"], "$.labels");
    if (labels.size() != m) schema_error("$.labels", "expected one label per candidate");
    for (std::size_t c = 0; c < labels.size(); ++c) {
      if (!labels[c].is_string()) schema_error("$.labels[" + std::to_string(c) + "]", "expected a string");
      out.labels.push_back(labels[c].get<std::string>());
    }
  }
  if (doc.contains("query")) {
    if (!doc["query"].is_object()) schema_error("$.query", "expected an object");
    out.query = doc["query"];
  }
  return out;
}

inline Document parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_document(doc);
}

inline json emit_model(const Model& model) {
  using detail::emit_set;
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        json out;
        if constexpr (std::is_same_v<T, JointModel>) {
          out["kind"] = "joint";
          out["profiles"] = json::array();
          for (const auto& e : x.entries) {
            json sets = json::array();
            for (const auto& s : e.profile) sets.push_back(emit_set(s));
            out["profiles"].push_back({{"p", e.prob.to_string()}, {"sets", sets}});
          }
        } else if constexpr (std::is_same_v<T, LotteryModel>) {
          out["kind"] = "lottery";
          out["voters"] = json::array();
          for (const auto& voter : x.voters) {
            json lottery = json::array();
            for (const auto& ws : voter) lottery.push_back({{"p", ws.prob.to_string()}, {"set", emit_set(ws.set)}});
            out["voters"].push_back(lottery);
          }
        } else if constexpr (std::is_same_v<T, CandidateProbModel>) {
          out["kind"] = "cp";
          out["p"] = json::array();
          for (const auto& row : x.p) {
            json jr = json::array();
            for (const auto& p : row) jr.push_back(p.to_string());
            out["p"].push_back(jr);
          }
        } else {
          out["kind"] = "3va";
          out["t"] = json::array();
          for (const auto& row : x.t) {
            json jr = json::array();
            for (Tri t : row) {
              if (t == Tri::unknown) jr.push_back("1/2");
              else jr.push_back(t == Tri::approve ? 1 : 0);
            }
            out["t"].push_back(jr);
          }
        }
        return out;
      },
      model);
}

inline json emit_document(const Document& doc) {
  json out;
  out["format_version"] = kFormatVersion;
  out["instance"] = {{"n", doc.inst.voters()}, {"m", doc.inst.candidates()}, {"k", doc.inst.committee_size()}};
  out["model"] = emit_model(doc.model);
  if (doc.committee) out["committee"] = detail::emit_set(*doc.committee);
  if (!doc.labels.empty()) out["labels"] = doc.labels;
  if (!doc.query.empty()) out["query"] = doc.query;
  return out;
}

inline std::string emit_document_text(const Document& doc) { return emit_document(doc).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// DIMACS-style inputs
// ---------------------------------------------------------------------------

/// "p cnf <vars> <clauses>" header, clauses as 0-terminated literal lists,
/// "c" comment lines. Every clause must have exactly three literals.
inline CnfFormula parse_dimacs_cnf(std::istream& in) {
  CnfFormula f;
  bool header = false;
  std::size_t declared = 0;
  std::vector<int> current;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c" || first[0] == '%') continue;
    if (first == "p") {
      std::string fmt;
      if (!(ls >> fmt >> f.variables >> declared) || fmt != "cnf")
        throw InputError("line " + std::to_string(lineno) + ": bad header, expected \"p cnf V C\"");
      header = true;
      continue;
    }
    if (!header) throw InputError("line " + std::to_string(lineno) + ": clause before \"p cnf\" header");
    std::istringstream all(line);
    int lit;
    while (all >> lit) {
      if (lit == 0) {
        if (current.size() != 3)
          throw InputError("line " + std::to_string(lineno) + ": clause has " + std::to_string(current.size()) +
                           " literals, expected 3");
        f.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
    if (!all.eof()) throw InputError("line " + std::to_string(lineno) + ": non-integer token");
  }
  if (!header) throw InputError("missing \"p cnf\" header");
  if (!current.empty()) throw InputError("last clause is not 0-terminated");
  if (f.clauses.size() != declared)
    throw InputError("header declares " + std::to_string(declared) + " clauses, found " +
                     std::to_string(f.clauses.size()));
  return f;
}

/// "p edge <vertices> <edges>" header, "e u v" lines with 1-based vertices,
/// "c" comment lines.
inline Graph parse_edge_list(std::istream& in) {
  Graph g;
  bool header = false;
  std::size_t declared = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c") continue;
    if (first == "p") {
      std::string fmt;
      if (!(ls >> fmt >> g.vertices >> declared) || fmt != "edge")
        throw InputError("line " + std::to_string(lineno) + ": bad header, expected \"p edge N M\"");
      header = true;
    } else if (first == "e") {
      if (!header) throw InputError("line " + std::to_string(lineno) + ": edge before \"p edge\" header");
      std::size_t u, v;
      if (!(ls >> u >> v) || u < 1 || v < 1 || u > g.vertices || v > g.vertices)
        throw InputError("line " + std::to_string(lineno) + ": bad edge");
      g.edges.emplace_back(u - 1, v - 1);
    } else {
      throw InputError("line " + std::to_string(lineno) + ": unexpected \"" + first + "\"");
    }
  }
  if (!header) throw InputError("missing \"p edge\" header");
  if (g.edges.size() != declared)
    throw InputError("header declares " + std::to_string(declared) + " edges, found " +
                     std::to_string(g.edges.size()));
  return g;
}

}  // namespace abcu
