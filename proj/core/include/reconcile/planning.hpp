#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "reconcile/atoms.hpp"

namespace reconcile {

using FluentSet = std::set<std::string>;

struct Action {
  std::string name;
  FluentSet pre;
  FluentSet add;
  FluentSet del;  // disjoint from add
};

/// STRIPS problem with closed-world fluent-set states and unit action costs.
struct PlanningProblem {
  FluentSet fluents;
  std::map<std::string, Action> actions;
  FluentSet init;
  FluentSet goal;
};

using Plan = std::vector<std::string>;

/// Visited states, one per step: states[0] is the initial state and
/// states[t+1] the result of applying plan[t].
struct Trace {
  std::vector<FluentSet> states;
};

struct PlanFailure {
  std::size_t step;
  std::string reason;
};

/// Problem file format:
///   { "fluents": [str], "actions": [{"name", "pre", "add", "del"}],
///     "init": [str], "goal": [str] }
/// Names must match `[A-Za-z][A-Za-z0-9]*` so that timestep suffixes stay
/// within the atom grammar. Schema violations report the JSON path.
PlanningProblem parse_problem(const std::string& json_text);

/// s ∪ add \ del when the precondition holds, nullopt otherwise.
std::optional<FluentSet> apply_action(const FluentSet& state, const Action& action);

std::variant<Trace, PlanFailure> execute_plan(const PlanningProblem& problem,
                                              const Plan& plan);

/// The plan executes from init and the goal holds in the final state.
bool is_valid_plan(const PlanningProblem& problem, const Plan& plan);

/// Shortest valid plan by breadth-first search over fluent-set states with
/// duplicate detection; expansions follow lexicographic action-name order,
/// which fixes the tie-breaking. Independent of the SAT route, so it serves
/// as the oracle for the encoder.
std::optional<Plan> bfs_optimal_plan(const PlanningProblem& problem);

/// Timestep-indexed atom names shared by the encoder and the trace model.
std::string step_atom_name(const std::string& name, int t);
Atom goal_marker_atom(int t);

/// The atom universe of the bounded encoding of (problem, horizon):
/// fluent atoms for t in 0..n, action atoms for t in 0..n-1, goal markers
/// for t in 0..n, each group in sorted name order.
Signature bounded_signature(const PlanningProblem& problem, int horizon);

/// The total assignment over the bounded-encoding signature induced by
/// executing the plan: action atoms per step (false from |plan| on), fluent
/// atoms per the trace with the state held constant after the plan ends,
/// and goal markers true exactly where the goal holds. The plan must be
/// executable and no longer than the horizon.
Model plan_trace_model(const PlanningProblem& problem, const Plan& plan,
                       int horizon);

}  // namespace reconcile
