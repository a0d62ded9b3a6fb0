#pragma once

#include <map>
#include <optional>
#include <utility>

#include "reconcile/kb.hpp"
#include "reconcile/planning.hpp"
#include "reconcile/solver.hpp"

namespace reconcile {

/// A planning problem compiled to a knowledge base for a fixed horizon.
/// Every entry is labeled with its axiom family:
///   init | goal | pre | addEff | delEff | frameAdd | frameDel | exclusion
///   | goalDef
/// e.g. "init:P", "pre:A:0", "frameAdd:E:0", "exclusion:A:B:0", "goalDef:1".
///
/// The goal markers goal_t are defined for every timestep as
/// goal_t <-> conjunction of the goal fluents at t, so that optimality
/// queries over earlier timesteps are expressible.
struct BoundedEncoding {
  KnowledgeBase kb;
  int horizon = 0;
  bool includes_goal_clause = false;
  std::map<std::pair<std::string, int>, Atom> action_atoms;  // t in 0..n-1
  std::map<std::pair<std::string, int>, Atom> fluent_atoms;  // t in 0..n
  std::map<int, Atom> goal_atoms;                            // t in 0..n
};

/// Axioms emitted, per the standard bounded encoding:
///   - initial state: f_0 for f in init, !f_0 for every other fluent;
///   - goal clause (only with `with_goal_clause`): f_n per goal fluent;
///   - per action and step: a_t -> preconditions at t, a_t -> add effects
///     at t+1, a_t -> negated delete effects at t+1;
///   - explanatory frame axioms per fluent and step: a change requires some
///     executed action supporting it (an empty supporter set forbids the
///     change);
///   - pairwise action exclusion per step (at most one action; action-free
///     steps are no-ops);
///   - goal-marker definitions for every step.
/// Fails when a fluent or action would collide with the reserved "goal"
/// marker prefix or with each other.
BoundedEncoding encode_bounded(const PlanningProblem& problem, int horizon,
                               bool with_goal_clause);

/// Reads the executed actions out of a satisfying model, in timestep order,
/// skipping action-free steps. The model must satisfy the encoding.
Plan extract_plan(const BoundedEncoding& enc, const Model& model);

/// Conjunction pinning down exactly the queried plan: the plan's action
/// atoms for t < |plan|, every action atom negated for |plan| <= t < n,
/// and goal_n. Trailing steps are forced action-free so that the query
/// tests the plan itself rather than some extension of it.
Formula validity_query(const BoundedEncoding& enc, const Plan& plan);

/// Conjunction of !goal_t for t in 0..n-1 ("no shorter plan reaches the
/// goal"). Requires horizon >= 1.
Formula optimality_query(const BoundedEncoding& enc);

/// Iterative deepening over horizons 0..max_horizon; the first satisfiable
/// goal-clause encoding yields the plan, so the returned horizon is minimal
/// and the plan is optimal.
std::optional<std::pair<Plan, int>> solve_with_deepening(
    const PlanningProblem& problem, int max_horizon);

}  // namespace reconcile
