#pragma once

// Command-line front end. run_cli() is the whole program minus process
// plumbing, so tests can drive it in-process.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abcu/decide.hpp"
#include "abcu/io.hpp"
#include "abcu/optimize.hpp"
#include "abcu/probability.hpp"
#include "abcu/reductions.hpp"

namespace abcu {

enum ExitCode : int { kExitOk = 0, kExitInternal = 1, kExitInput = 2, kExitBudget = 3 };

namespace cli {

struct Flags {
  std::uint64_t budget = std::uint64_t{1} << 20;
  bool force_enumeration = false;
  std::uint64_t seed = 0;
  bool witness = false;
  std::string output = "human";

  bool machine() const { return output == "machine"; }
  SolveOptions solve() const { return {Budget{budget, budget}, force_enumeration}; }
};

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Document load(const std::string& path) {
  const std::string text = read_input(path);
  return parse_document(std::string_view(text));
}

inline const Committee& need_committee(const Document& doc) {
  if (!doc.committee) throw InputError("$.committee: this command needs a committee");
  return *doc.committee;
}

/// The single plausible profile of a certain model.
inline ApprovalProfile certain_profile(const Document& doc) {
  if (plausible_count(doc.model) != 1)
    throw InputError("$.model: this command needs a model with exactly one plausible profile");
  return first_plausible(doc.model).profile;
}

inline std::string fraction_text(const Probability& p) {
  std::ostringstream ss;
  ss << p.to_string() << " (~" << std::setprecision(6) << p.approx() << ", approximate)";
  return ss.str();
}

inline json profile_json(const ApprovalProfile& profile) {
  json out = json::array();
  for (const auto& s : profile) out.push_back(s.members());
  return out;
}

inline json violation_json(const Violation& v) {
  return {{"axiom", to_string(v.axiom)}, {"ell", v.ell}, {"group", v.group}, {"common", v.common.members()}};
}

inline std::string profile_text(const ApprovalProfile& profile) {
  std::string out = "(";
  for (std::size_t i = 0; i < profile.size(); ++i) out += (i ? ", " : "") + profile[i].to_string();
  return out + ")";
}

inline std::string violation_text(const Violation& v) {
  std::string group = "{";
  for (std::size_t i = 0; i < v.group.size(); ++i) group += (i ? "," : "") + std::to_string(v.group[i]);
  return to_string(v.axiom) + " violated: ell=" + std::to_string(v.ell) + ", voters " + group +
         "}, common candidates " + v.common.to_string();
}

inline json decision_witness(const DecisionResult& r) {
  json w = json::object();
  if (r.profile) w["profile"] = profile_json(r.profile->profile), w["profile_p"] = r.profile->prob.to_string();
  if (r.violation) w["violation"] = violation_json(*r.violation);
  return w;
}

inline void print_decision(std::ostream& out, const Flags& flags, json report, const DecisionResult& r) {
  report["answer"] = r.answer;
  report["method"] = to_string(r.method);
  if (r.committee) report["committee"] = r.committee->members();
  if (flags.witness) report["witness"] = decision_witness(r);
  if (flags.machine()) {
    out << report.dump() << "\n";
    return;
  }
  out << "answer: " << (r.answer ? "yes" : "no") << "\n";
  if (r.committee) out << "committee: " << r.committee->to_string() << "\n";
  out << "method: " << to_string(r.method) << "\n";
  if (flags.witness) {
    if (r.profile)
      out << "witness profile: " << profile_text(r.profile->profile) << " with probability "
          << r.profile->prob.to_string() << "\n";
    if (r.violation) out << "witness violation: " << violation_text(*r.violation) << "\n";
  }
}

inline void print_document(std::ostream& out, const Document& doc) { out << emit_document_text(doc); }

}  // namespace cli

/// Runs one CLI invocation; `args` excludes the program name. Returns the
/// process exit status: 0 computed, 2 input error, 3 budget exceeded.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace cli;
  Flags flags;
  CLI::App app{"Exact JR / PJR / EJR analysis of approval committees under uncertain preferences", "abcu"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--budget", flags.budget, "Cap on plausible profiles and on committees (default 2^20)");
  app.add_flag("--force-enumeration", flags.force_enumeration, "Bypass polynomial special cases");
  app.add_option("--seed", flags.seed, "Random seed for gen");
  app.add_flag("--witness", flags.witness, "Report witnesses");
  app.add_option("--output", flags.output, "human | machine")->check(CLI::IsMember({"human", "machine"}));

  std::string file, target, axiom_name, mode, what;
  std::size_t r = 0;
  GenParams gen;
  std::string gen_kind = "3va";

  auto* validate_cmd = app.add_subcommand("validate", "Validate a document");
  validate_cmd->add_option("file", file)->required();

  auto* convert_cmd = app.add_subcommand("convert", "Convert a model (to-lottery | to-joint)");
  convert_cmd->add_option("target", target)->required()->check(CLI::IsMember({"to-lottery", "to-joint"}));
  convert_cmd->add_option("file", file)->required();

  auto axiom_check = CLI::IsMember({"jr", "pjr", "ejr"});
  auto* check_cmd = app.add_subcommand("check", "Check an axiom on a certain profile");
  check_cmd->add_option("axiom", axiom_name)->required()->check(axiom_check);
  check_cmd->add_option("file", file)->required();

  auto* decide_cmd = app.add_subcommand("decide", "Possible / necessary axiom for the committee");
  decide_cmd->add_option("mode", mode)->required()->check(CLI::IsMember({"poss", "nec"}));
  decide_cmd->add_option("axiom", axiom_name)->required()->check(axiom_check);
  decide_cmd->add_option("file", file)->required();

  auto* exists_cmd = app.add_subcommand("exists", "Existence questions over all committees");
  exists_cmd->add_option("what", what)->required()->check(CLI::IsMember({"poss-jr", "nec-jr", "nec-pjr", "nec-ejr"}));
  exists_cmd->add_option("file", file)->required();

  auto* prob_cmd = app.add_subcommand("prob", "Exact probability that the committee satisfies an axiom");
  prob_cmd->add_option("axiom", axiom_name)->required()->check(axiom_check);
  prob_cmd->add_option("file", file)->required();

  auto* count_cmd = app.add_subcommand("count", "Count 3VA completions in which the committee is JR");
  count_cmd->add_option("file", file)->required();

  auto* max_cmd = app.add_subcommand("max", "Committee maximizing the probability of an axiom");
  max_cmd->add_option("axiom", axiom_name)->required()->check(axiom_check);
  max_cmd->add_option("file", file)->required();

  auto* sizejr_cmd = app.add_subcommand("sizejr", "JR committee of size r < k on a certain profile");
  sizejr_cmd->add_option("file", file)->required();
  sizejr_cmd->add_option("--r", r, "Committee size (default: query.r in the document)");

  auto* reduce_cmd = app.add_subcommand("reduce", "Build a gadget instance (3sat: DIMACS CNF, vc: edge list)");
  reduce_cmd->add_option("source", target)->required()->check(CLI::IsMember({"3sat", "vc"}));
  reduce_cmd->add_option("file", file)->required();

  auto* gen_cmd = app.add_subcommand("gen", "Generate a random model");
  gen_cmd->add_option("--kind", gen_kind)->check(CLI::IsMember({"joint", "lottery", "cp", "3va"}));
  gen_cmd->add_option("--n", gen.n);
  gen_cmd->add_option("--m", gen.m);
  gen_cmd->add_option("--k", gen.k);
  gen_cmd->add_option("--degree", gen.degree);

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    const auto opts = flags.solve();
    json report;

    if (validate_cmd->parsed()) {
      auto doc = load(file);
      if (flags.machine()) out << json{{"command", "validate"}, {"valid", true}}.dump() << "\n";
      else out << "ok: " << to_string(kind_of(doc.model)) << " model, n=" << doc.inst.voters()
               << " m=" << doc.inst.candidates() << " k=" << doc.inst.committee_size() << ", "
               << plausible_count(doc.model).str() << " plausible profiles\n";
      return kExitOk;
    }

    if (convert_cmd->parsed()) {
      auto doc = load(file);
      const Budget budget = opts.budget;
      if (target == "to-lottery") {
        if (std::holds_alternative<JointModel>(doc.model))
          throw InputError("a joint model has no lottery representation in general");
        if (detail::is_cp_like(doc.model)) doc.model = cp_to_lottery(detail::as_cp(doc.model), budget);
      } else {
        if (detail::is_cp_like(doc.model)) doc.model = cp_to_lottery(detail::as_cp(doc.model), budget);
        if (auto* lottery = std::get_if<LotteryModel>(&doc.model)) doc.model = lottery_to_joint(*lottery, budget);
      }
      print_document(out, doc);
      return kExitOk;
    }

    if (check_cmd->parsed()) {
      auto doc = load(file);
      const auto axiom = parse_axiom(axiom_name);
      auto result = check_axiom(axiom, doc.inst, certain_profile(doc), need_committee(doc));
      report = {{"command", "check"}, {"axiom", axiom_name}, {"holds", result.holds}};
      if (result.violation) report["violation"] = violation_json(*result.violation);
      if (flags.machine()) {
        out << report.dump() << "\n";
      } else {
        out << axiom_name << ": " << (result.holds ? "satisfied" : "violated") << "\n";
        if (result.violation) out << violation_text(*result.violation) << "\n";
      }
      return kExitOk;
    }

    if (decide_cmd->parsed()) {
      auto doc = load(file);
      const auto axiom = parse_axiom(axiom_name);
      const auto& w = need_committee(doc);
      auto result = mode == "poss" ? is_poss_axiom(doc.inst, doc.model, w, axiom, opts)
                                   : is_nec_axiom(doc.inst, doc.model, w, axiom, opts);
      print_decision(out, flags, {{"command", "decide"}, {"mode", mode}, {"axiom", axiom_name}}, result);
      return kExitOk;
    }

    if (exists_cmd->parsed()) {
      auto doc = load(file);
      DecisionResult result;
      if (what == "poss-jr") result = exists_poss_jr(doc.inst, doc.model);
      else result = exists_nec_axiom(doc.inst, doc.model, parse_axiom(what.substr(4)), opts);
      print_decision(out, flags, {{"command", "exists"}, {"query", what}}, result);
      return kExitOk;
    }

    if (prob_cmd->parsed() || count_cmd->parsed()) {
      auto doc = load(file);
      const bool counting = count_cmd->parsed();
      if (counting && !std::holds_alternative<ThreeValuedModel>(doc.model))
        throw InputError("$.model: count needs a 3va model");
      const auto axiom = counting ? Axiom::jr : parse_axiom(axiom_name);
      auto result = axiom_probability(doc.inst, doc.model, need_committee(doc), axiom, opts);
      report = {{"command", counting ? "count" : "prob"}, {"axiom", to_string(axiom)},
                {"value", result.value.to_string()}, {"method", to_string(result.method)}};
      if (result.counts)
        report["counts"] = {{"satisfying", result.counts->satisfying.str()}, {"total", result.counts->total.str()}};
      if (flags.machine()) {
        out << report.dump() << "\n";
      } else {
        if (counting && result.counts)
          out << "JR-satisfying completions: " << result.counts->satisfying.str() << " of "
              << result.counts->total.str() << "\n";
        out << to_string(axiom) << " probability: " << fraction_text(result.value) << "\n";
        out << "method: " << to_string(result.method) << "\n";
      }
      return kExitOk;
    }

    if (max_cmd->parsed()) {
      auto doc = load(file);
      auto result = max_axiom(doc.inst, doc.model, parse_axiom(axiom_name), opts);
      report = {{"command", "max"}, {"axiom", axiom_name}, {"committee", result.committee.members()},
                {"value", result.value.to_string()}, {"ties", result.ties}};
      if (flags.machine()) {
        out << report.dump() << "\n";
      } else {
        out << "committee: " << result.committee.to_string() << "\n";
        out << axiom_name << " probability: " << fraction_text(result.value) << "\n";
        out << "maximizers: " << result.ties << "\n";
      }
      return kExitOk;
    }

    if (sizejr_cmd->parsed()) {
      auto doc = load(file);
      if (sizejr_cmd->count("--r") == 0) {
        if (!doc.query.contains("r") || !doc.query["r"].is_number_unsigned())
          throw InputError("sizejr needs --r or query.r");
        r = doc.query["r"].get<std::size_t>();
      }
      auto result = size_jr(doc.inst, certain_profile(doc), r, opts.budget);
      report = {{"command", "sizejr"}, {"r", r}, {"answer", result.answer}};
      if (result.committee) report["committee"] = result.committee->members();
      if (flags.machine()) {
        out << report.dump() << "\n";
      } else {
        out << "answer: " << (result.answer ? "yes" : "no") << "\n";
        if (result.committee) out << "committee: " << result.committee->to_string() << "\n";
      }
      return kExitOk;
    }

    if (reduce_cmd->parsed()) {
      std::istringstream in(read_input(file));
      auto red = target == "3sat" ? reduce_3sat(parse_dimacs_cnf(in)) : reduce_vc(parse_edge_list(in));
      Document doc{red.inst, red.model, red.committee, red.labels, json::object()};
      print_document(out, doc);
      return kExitOk;
    }

    if (gen_cmd->parsed()) {
      gen.kind = parse_model_kind(gen_kind);
      gen.seed = flags.seed;
      auto [inst, model] = gen_random(gen);
      Document doc{inst, model, std::nullopt, {}, json::object()};
      print_document(out, doc);
      return kExitOk;
    }
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace abcu
