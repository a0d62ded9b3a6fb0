#include "reconcile/planning.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <utility>

#include "json.hpp"
#include "reconcile/errors.hpp"

namespace reconcile {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::Schema, "schema error at " + path + ": " + what);
}

// Plain identifier without a timestep suffix, so that `name_t` stays inside
// the atom grammar.
bool is_valid_plain_name(const std::string& name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c));
  });
}

FluentSet read_fluent_list(const json& doc, const std::string& path,
                           const FluentSet* universe) {
  if (!doc.is_array()) schema_error(path, "expected an array of fluent names");
  FluentSet out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const std::string item_path = path + "[" + std::to_string(i) + "]";
    if (!doc[i].is_string()) schema_error(item_path, "expected a string");
    const std::string name = doc[i].get<std::string>();
    if (!is_valid_plain_name(name)) {
      schema_error(item_path, "invalid name '" + name + "'");
    }
    if (universe != nullptr && universe->count(name) == 0) {
      schema_error(item_path, "unknown fluent '" + name + "'");
    }
    out.insert(name);
  }
  return out;
}

}  // namespace

PlanningProblem parse_problem(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("$", "expected an object");
  for (const char* key : {"fluents", "actions", "init", "goal"}) {
    if (!doc.contains(key)) schema_error(std::string("$.") + key, "missing field");
  }

  PlanningProblem problem;
  problem.fluents = read_fluent_list(doc["fluents"], "$.fluents", nullptr);

  if (!doc["actions"].is_array()) schema_error("$.actions", "expected an array");
  for (std::size_t i = 0; i < doc["actions"].size(); ++i) {
    const auto& item = doc["actions"][i];
    const std::string path = "$.actions[" + std::to_string(i) + "]";
    if (!item.is_object()) schema_error(path, "expected an object");
    for (const char* key : {"name", "pre", "add", "del"}) {
      if (!item.contains(key)) schema_error(path + "." + key, "missing field");
    }
    if (!item["name"].is_string()) schema_error(path + ".name", "expected a string");

    Action action;
    action.name = item["name"].get<std::string>();
    if (!is_valid_plain_name(action.name)) {
      schema_error(path + ".name", "invalid name '" + action.name + "'");
    }
    if (problem.actions.count(action.name) > 0) {
      schema_error(path + ".name", "duplicate action '" + action.name + "'");
    }
    action.pre = read_fluent_list(item["pre"], path + ".pre", &problem.fluents);
    action.add = read_fluent_list(item["add"], path + ".add", &problem.fluents);
    action.del = read_fluent_list(item["del"], path + ".del", &problem.fluents);
    for (const auto& f : action.add) {
      if (action.del.count(f) > 0) {
        schema_error(path, "fluent '" + f + "' appears in both add and del");
      }
    }
    problem.actions.emplace(action.name, std::move(action));
  }

  problem.init = read_fluent_list(doc["init"], "$.init", &problem.fluents);
  problem.goal = read_fluent_list(doc["goal"], "$.goal", &problem.fluents);
  return problem;
}

std::optional<FluentSet> apply_action(const FluentSet& state, const Action& action) {
  if (!std::includes(state.begin(), state.end(), action.pre.begin(), action.pre.end())) {
    return std::nullopt;
  }
  FluentSet next = state;
  next.insert(action.add.begin(), action.add.end());
  for (const auto& f : action.del) next.erase(f);
  return next;
}

std::variant<Trace, PlanFailure> execute_plan(const PlanningProblem& problem,
                                              const Plan& plan) {
  Trace trace;
  trace.states.push_back(problem.init);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const auto it = problem.actions.find(plan[i]);
    if (it == problem.actions.end()) {
      return PlanFailure{i, "unknown action '" + plan[i] + "'"};
    }
    auto next = apply_action(trace.states.back(), it->second);
    if (!next) {
      return PlanFailure{i, "precondition of '" + plan[i] + "' not satisfied"};
    }
    trace.states.push_back(std::move(*next));
  }
  return trace;
}

bool is_valid_plan(const PlanningProblem& problem, const Plan& plan) {
  const auto result = execute_plan(problem, plan);
  const Trace* trace = std::get_if<Trace>(&result);
  if (trace == nullptr) return false;
  const FluentSet& final_state = trace->states.back();
  return std::includes(final_state.begin(), final_state.end(), problem.goal.begin(),
                       problem.goal.end());
}

std::optional<Plan> bfs_optimal_plan(const PlanningProblem& problem) {
  const auto reaches_goal = [&problem](const FluentSet& s) {
    return std::includes(s.begin(), s.end(), problem.goal.begin(), problem.goal.end());
  };
  if (reaches_goal(problem.init)) return Plan{};

  std::map<FluentSet, std::pair<FluentSet, std::string>> parent;
  std::deque<FluentSet> queue{problem.init};
  std::set<FluentSet> visited{problem.init};
  while (!queue.empty()) {
    FluentSet state = std::move(queue.front());
    queue.pop_front();
    for (const auto& [name, action] : problem.actions) {  // lexicographic order
      auto next = apply_action(state, action);
      if (!next || !visited.insert(*next).second) continue;
      parent.emplace(*next, std::make_pair(state, name));
      if (reaches_goal(*next)) {
        Plan plan;
        FluentSet cursor = *next;
        while (cursor != problem.init) {
          const auto& [prev, via] = parent.at(cursor);
          plan.push_back(via);
          cursor = prev;
        }
        std::reverse(plan.begin(), plan.end());
        return plan;
      }
      queue.push_back(std::move(*next));
    }
  }
  return std::nullopt;
}

std::string step_atom_name(const std::string& name, int t) {
  return name + "_" + std::to_string(t);
}

Atom goal_marker_atom(int t) { return Atom{step_atom_name("goal", t)}; }

Signature bounded_signature(const PlanningProblem& problem, int horizon) {
  Signature sig;
  for (int t = 0; t <= horizon; ++t) {
    for (const auto& f : problem.fluents) sig.add(Atom{step_atom_name(f, t)});
  }
  for (int t = 0; t < horizon; ++t) {
    for (const auto& [name, action] : problem.actions) {
      sig.add(Atom{step_atom_name(name, t)});
    }
  }
  for (int t = 0; t <= horizon; ++t) sig.add(goal_marker_atom(t));
  return sig;
}

Model plan_trace_model(const PlanningProblem& problem, const Plan& plan, int horizon) {
  if (static_cast<int>(plan.size()) > horizon) {
    throw Error(ErrorKind::Domain, "plan is longer than the horizon");
  }
  auto result = execute_plan(problem, plan);
  const Trace* trace = std::get_if<Trace>(&result);
  if (trace == nullptr) {
    const auto& failure = std::get<PlanFailure>(result);
    throw Error(ErrorKind::Domain, "invalid plan: step " + std::to_string(failure.step) +
                                       ": " + failure.reason);
  }

  std::set<Atom> trues;
  const auto state_at = [&trace](int t) -> const FluentSet& {
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t),
                                                trace->states.size() - 1);
    return trace->states[i];  // state held constant after the plan ends
  };
  for (int t = 0; t <= horizon; ++t) {
    const FluentSet& state = state_at(t);
    for (const auto& f : state) trues.insert(Atom{step_atom_name(f, t)});
    if (std::includes(state.begin(), state.end(), problem.goal.begin(),
                      problem.goal.end())) {
      trues.insert(goal_marker_atom(t));
    }
  }
  for (std::size_t t = 0; t < plan.size(); ++t) {
    trues.insert(Atom{step_atom_name(plan[t], static_cast<int>(t))});
  }
  return Model(bounded_signature(problem, horizon), std::move(trues));
}

}  // namespace reconcile
