#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "reconcile/belief.hpp"
#include "reconcile/encoding.hpp"
#include "reconcile/errors.hpp"
#include "reconcile/kb.hpp"
#include "reconcile/planning.hpp"
#include "reconcile/reconcile.hpp"
#include "reconcile/solver.hpp"

namespace {

using nlohmann::json;
using namespace reconcile;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Schema:
      return 2;
    case ErrorKind::Domain:
      return 3;
    case ErrorKind::Resource:
      return 4;
  }
  return 3;
}

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
      return "parse";
    case ErrorKind::Schema:
      return "schema";
    case ErrorKind::Domain:
      return "domain";
    case ErrorKind::Resource:
      return "resource";
  }
  return "domain";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

KnowledgeBase load_kb(const std::string& path) { return kb_from_json(read_file(path)); }

PlanningProblem load_problem(const std::string& path) {
  return parse_problem(read_file(path));
}

Plan load_plan(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorKind::Schema, "schema error at $: plan file must be an array");
  }
  Plan plan;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    if (!doc[i].is_string()) {
      throw Error(ErrorKind::Schema,
                  "schema error at $[" + std::to_string(i) + "]: expected a string");
    }
    plan.push_back(doc[i].get<std::string>());
  }
  return plan;
}

EntailmentMode parse_mode(const std::string& mode) {
  if (mode == "skeptical") return EntailmentMode::Skeptical;
  if (mode == "credulous") return EntailmentMode::Credulous;
  throw Error(ErrorKind::Parse, "unknown mode '" + mode + "'");
}

json models_json(const std::vector<Model>& models) {
  json out = json::array();
  for (const auto& m : models) out.push_back(m.true_names());
  return out;
}

json labels_json(const std::vector<KbEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries) out.push_back(e.label);
  return out;
}

json kb_json(const KnowledgeBase& kb) { return json::parse(kb_to_json(kb)); }

json cost_json(double cost) {
  if (cost == std::floor(cost)) return json(static_cast<long long>(cost));
  return json(cost);
}

void emit(const json& payload, bool pretty,
          const std::vector<std::string>& diagnostics = {}) {
  json envelope;
  envelope["status"] = "ok";
  envelope["payload"] = payload;
  envelope["diagnostics"] = diagnostics;
  std::cout << (pretty ? envelope.dump(2) : envelope.dump()) << "\n";
}

// The trace used by --gamma trace: the deterministic DPLL model of the
// reference KB (unique for knowledge bases that encode one executed plan).
Model reference_trace(const KnowledgeBase& kb_a) {
  SatResult result = dpll_sat(to_cnf(kb_a.conjunction(), kb_a.signature()));
  if (!result.is_sat()) {
    throw Error(ErrorKind::Domain, "the agent knowledge base is inconsistent");
  }
  return result.model->project(kb_a.signature());
}

GammaPolicy make_policy(const std::string& gamma, const std::string& kb_a_path) {
  if (gamma == "none") return GammaNone{};
  if (gamma == "min-card") return GammaMinCard{};
  if (gamma == "trace") {
    if (kb_a_path.empty()) {
      throw Error(ErrorKind::Parse, "--gamma trace requires --kb-a");
    }
    KnowledgeBase kb_a = load_kb(kb_a_path);
    return GammaTrace{reference_trace(kb_a), kb_a};
  }
  throw Error(ErrorKind::Parse, "unknown gamma policy '" + gamma + "'");
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SAT-backed plan queries, knowledge-base reconciliation, and "
               "belief-change operators"};
  app.require_subcommand(1);

  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent the JSON output");

  std::string kb_path, kb_a_path, kb_h_path, problem_path, plan_path, epsilon_path;
  std::string query_text, mode_name = "skeptical", gamma_name = "none";
  std::string engine = "sat", hypotheses_csv, components_csv, out_path;
  std::vector<std::string> observations;
  int horizon = 0;
  bool no_goal = false;

  auto* cmd_models = app.add_subcommand("models", "enumerate the models of a KB");
  cmd_models->add_option("--kb", kb_path)->required();

  auto* cmd_entail = app.add_subcommand("entail", "entailment query against a KB");
  cmd_entail->add_option("--kb", kb_path)->required();
  cmd_entail->add_option("--query", query_text)->required();
  cmd_entail->add_option("--mode", mode_name);

  auto* cmd_encode = app.add_subcommand("encode", "compile a planning problem to a KB");
  cmd_encode->add_option("--problem", problem_path)->required();
  cmd_encode->add_option("--horizon", horizon)->required();
  cmd_encode->add_flag("--no-goal", no_goal, "omit the goal clause");
  cmd_encode->add_option("--out", out_path, "also write the raw KB JSON to a file");

  auto* cmd_plan = app.add_subcommand("plan", "find an optimal plan");
  cmd_plan->add_option("--problem", problem_path)->required();
  cmd_plan->add_option("--horizon", horizon, "maximum horizon for the sat engine");
  cmd_plan->add_option("--engine", engine)->check(CLI::IsMember({"sat", "bfs"}));

  auto* cmd_validate = app.add_subcommand("validate", "check plan validity against a KB");
  cmd_validate->add_option("--problem", problem_path)->required();
  cmd_validate->add_option("--horizon", horizon)->required();
  cmd_validate->add_option("--plan", plan_path)->required();
  cmd_validate->add_option("--kb-h", kb_h_path, "defaults to the encoding itself");

  auto* cmd_optimal = app.add_subcommand("optimal", "check plan optimality against a KB");
  cmd_optimal->add_option("--problem", problem_path)->required();
  cmd_optimal->add_option("--horizon", horizon)->required();
  cmd_optimal->add_option("--plan", plan_path)->required();
  cmd_optimal->add_option("--kb-h", kb_h_path, "defaults to the encoding itself");

  auto* cmd_explain = app.add_subcommand(
      "explain", "minimum-cost explanation reconciling two KBs");
  cmd_explain->add_option("--kb-a", kb_a_path)->required();
  cmd_explain->add_option("--kb-h", kb_h_path)->required();
  cmd_explain->add_option("--query", query_text)->required();
  cmd_explain->add_option("--mode", mode_name);
  cmd_explain->add_option("--gamma", gamma_name)
      ->check(CLI::IsMember({"none", "min-card", "trace"}));

  auto* cmd_update = app.add_subcommand("update", "apply a formula set to a KB");
  cmd_update->add_option("--kb", kb_path)->required();
  cmd_update->add_option("--epsilon", epsilon_path)->required();
  cmd_update->add_option("--gamma", gamma_name)
      ->check(CLI::IsMember({"none", "min-card", "trace"}));
  cmd_update->add_option("--kb-a", kb_a_path, "reference KB for --gamma trace");

  auto* cmd_revise = app.add_subcommand("revise", "AGM revision (Dalal distance)");
  cmd_revise->add_option("--kb", kb_path)->required();
  cmd_revise->add_option("--query", query_text);
  cmd_revise->add_option("--epsilon", epsilon_path, "KB file; its conjunction is the input");

  auto* cmd_pma = app.add_subcommand("pma-update", "KM update (possible models approach)");
  cmd_pma->add_option("--kb", kb_path)->required();
  cmd_pma->add_option("--query", query_text);
  cmd_pma->add_option("--epsilon", epsilon_path, "KB file; its conjunction is the input");

  auto* cmd_abduce = app.add_subcommand("abduce", "subset-minimal abductive explanations");
  cmd_abduce->add_option("--kb", kb_path)->required();
  cmd_abduce->add_option("--query", query_text)->required();
  cmd_abduce->add_option("--hypotheses", hypotheses_csv,
                         "comma-separated abducibles; defaults to the whole signature");

  auto* cmd_diagnose = app.add_subcommand("diagnose", "subset-minimal diagnoses");
  cmd_diagnose->add_option("--kb", kb_path)->required();
  cmd_diagnose->add_option("--obs", observations, "observation formula (repeatable)");
  cmd_diagnose->add_option("--components", components_csv)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json envelope;
    envelope["status"] = "error";
    envelope["payload"] = {{"kind", "parse"}, {"message", e.what()}};
    envelope["diagnostics"] = json::array();
    std::cout << envelope.dump() << "\n";
    return 2;
  }

  try {
    if (cmd_models->parsed()) {
      emit({{"models", models_json(enumerate_models(load_kb(kb_path)))}}, pretty);
    } else if (cmd_entail->parsed()) {
      const bool holds =
          entails(load_kb(kb_path), parse_formula(query_text), parse_mode(mode_name));
      emit({{"entails", holds}, {"mode", mode_name}}, pretty);
    } else if (cmd_encode->parsed()) {
      BoundedEncoding enc = encode_bounded(load_problem(problem_path), horizon, !no_goal);
      const std::string dump = kb_to_json(enc.kb);
      if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error(ErrorKind::Parse, "cannot write file: " + out_path);
        out << dump << "\n";
      }
      emit({{"kb", json::parse(dump)}, {"horizon", horizon}}, pretty);
    } else if (cmd_plan->parsed()) {
      json payload{{"engine", engine}, {"plan", nullptr}, {"length", nullptr},
                   {"horizon", nullptr}};
      PlanningProblem problem = load_problem(problem_path);
      if (engine == "bfs") {
        if (auto plan = bfs_optimal_plan(problem)) {
          payload["plan"] = *plan;
          payload["length"] = plan->size();
        }
      } else {
        if (!cmd_plan->count("--horizon")) {
          throw Error(ErrorKind::Parse, "the sat engine requires --horizon");
        }
        if (auto found = solve_with_deepening(problem, horizon)) {
          payload["plan"] = found->first;
          payload["length"] = found->first.size();
          payload["horizon"] = found->second;
        }
      }
      emit(payload, pretty);
    } else if (cmd_validate->parsed() || cmd_optimal->parsed()) {
      PlanningProblem problem = load_problem(problem_path);
      BoundedEncoding enc = encode_bounded(problem, horizon, true);
      KnowledgeBase kb_h = kb_h_path.empty() ? enc.kb : load_kb(kb_h_path);
      Plan plan = load_plan(plan_path);
      const bool valid = check_plan_validity(kb_h, enc, plan);
      if (cmd_validate->parsed()) {
        emit({{"valid", valid}}, pretty);
      } else {
        const bool optimal = valid && check_plan_optimality(kb_h, enc, plan);
        emit({{"valid", valid}, {"optimal", optimal}}, pretty);
      }
    } else if (cmd_explain->parsed()) {
      KnowledgeBase kb_a = load_kb(kb_a_path);
      KnowledgeBase kb_h = load_kb(kb_h_path);
      GammaPolicy policy = gamma_name == "trace"
                               ? GammaPolicy{GammaTrace{reference_trace(kb_a), kb_a}}
                               : make_policy(gamma_name, kb_a_path);
      auto explanation = find_explanation(kb_a, kb_h, parse_formula(query_text),
                                          parse_mode(mode_name), policy);
      json payload{{"epsilon", nullptr}, {"gamma", nullptr}, {"cost", nullptr},
                   {"updated_kb", nullptr}};
      if (explanation) {
        UpdateResult update = update_kb(kb_h, explanation->epsilon, policy);
        payload["epsilon"] = labels_json(explanation->epsilon);
        payload["gamma"] = labels_json(explanation->gamma);
        payload["cost"] = cost_json(explanation->cost);
        payload["updated_kb"] = kb_json(update.updated);
      }
      emit(payload, pretty);
    } else if (cmd_update->parsed()) {
      KnowledgeBase kb = load_kb(kb_path);
      KnowledgeBase epsilon_kb = load_kb(epsilon_path);
      GammaPolicy policy = make_policy(gamma_name, kb_a_path);
      UpdateResult result = update_kb(kb, epsilon_kb.entries(), policy);
      emit({{"added", labels_json(result.added)},
            {"removed", labels_json(result.removed)},
            {"updated_kb", kb_json(result.updated)}},
           pretty);
    } else if (cmd_revise->parsed() || cmd_pma->parsed()) {
      KnowledgeBase kb = load_kb(kb_path);
      Formula input = [&] {
        if (!query_text.empty()) return parse_formula(query_text);
        if (!epsilon_path.empty()) return load_kb(epsilon_path).conjunction();
        throw Error(ErrorKind::Parse, "provide --query or --epsilon");
      }();
      KnowledgeBase result =
          cmd_revise->parsed() ? revise(kb, input) : update_pma(kb, input);
      emit({{"formula", result.entries().front().formula.to_text()},
            {"models", models_json(enumerate_models(result))}},
           pretty);
    } else if (cmd_abduce->parsed()) {
      AbductionProblem problem{load_kb(kb_path), parse_formula(query_text), {}};
      if (hypotheses_csv.empty()) {
        for (const auto& atom : problem.kb.signature().atoms()) {
          problem.hypotheses.insert(atom);
        }
      } else {
        for (const auto& name : split_csv(hypotheses_csv)) {
          problem.hypotheses.insert(Atom{name});
        }
      }
      const auto explanations = abduce(problem);
      json list = json::array();
      for (const auto& alpha : explanations) list.push_back(alpha.to_text());
      json reason = nullptr;
      if (explanations.empty()) {
        reason = is_consistent(problem.kb) ? "no-abductive-explanation" : "inconsistent-kb";
      }
      emit({{"explanations", list}, {"reason", reason}}, pretty);
    } else if (cmd_diagnose->parsed()) {
      DiagnosisProblem problem;
      problem.kb = load_kb(kb_path);
      for (const auto& text : observations) {
        problem.observations.push_back(parse_formula(text));
      }
      problem.components = split_csv(components_csv);
      for (const auto& component : problem.components) {
        problem.ab_atoms.emplace(component, Atom{"ab" + component});
      }
      json list = json::array();
      for (const auto& diagnosis : diagnose(problem)) {
        list.push_back(std::vector<std::string>(diagnosis.begin(), diagnosis.end()));
      }
      emit({{"diagnoses", list}}, pretty);
    }
  } catch (const Error& e) {
    json envelope;
    envelope["status"] = "error";
    envelope["payload"] = {{"kind", kind_name(e.kind())}, {"message", e.what()}};
    envelope["diagnostics"] = json::array();
    std::cout << envelope.dump() << "\n";
    return exit_code_for(e.kind());
  }
  return 0;
}
