#include "reconcile/encoding.hpp"

#include <string>
#include <vector>

#include "reconcile/errors.hpp"

namespace reconcile {

namespace {

std::string step_label(const std::string& family, const std::string& name, int t) {
  return family + ":" + name + ":" + std::to_string(t);
}

}  // namespace

BoundedEncoding encode_bounded(const PlanningProblem& problem, int horizon,
                               bool with_goal_clause) {
  if (horizon < 0) throw Error(ErrorKind::Domain, "horizon must be non-negative");
  for (const auto& f : problem.fluents) {
    if (f == "goal") {
      throw Error(ErrorKind::Domain, "fluent name 'goal' collides with the goal markers");
    }
    if (problem.actions.count(f) > 0) {
      throw Error(ErrorKind::Domain,
                  "name '" + f + "' is used for both a fluent and an action");
    }
  }
  if (problem.actions.count("goal") > 0) {
    throw Error(ErrorKind::Domain, "action name 'goal' collides with the goal markers");
  }

  BoundedEncoding enc;
  enc.horizon = horizon;
  enc.includes_goal_clause = with_goal_clause;
  enc.kb = KnowledgeBase{bounded_signature(problem, horizon)};

  for (int t = 0; t <= horizon; ++t) {
    for (const auto& f : problem.fluents) {
      enc.fluent_atoms[{f, t}] = Atom{step_atom_name(f, t)};
    }
    enc.goal_atoms[t] = goal_marker_atom(t);
  }
  for (int t = 0; t < horizon; ++t) {
    for (const auto& [name, action] : problem.actions) {
      enc.action_atoms[{name, t}] = Atom{step_atom_name(name, t)};
    }
  }

  const auto fluent_at = [&enc](const std::string& f, int t) {
    return Formula::atom(enc.fluent_atoms.at({f, t}));
  };
  const auto action_at = [&enc](const std::string& a, int t) {
    return Formula::atom(enc.action_atoms.at({a, t}));
  };

  // Initial state: one entry per fluent, positive or negated.
  for (const auto& f : problem.fluents) {
    Formula lit = problem.init.count(f) > 0 ? fluent_at(f, 0)
                                            : Formula::negate(fluent_at(f, 0));
    enc.kb.add("init:" + f, std::move(lit));
  }

  // Goal clause at the final step.
  if (with_goal_clause) {
    for (const auto& f : problem.goal) {
      enc.kb.add("goal:" + f, fluent_at(f, horizon));
    }
  }

  // Action preconditions and effects.
  for (int t = 0; t < horizon; ++t) {
    for (const auto& [name, action] : problem.actions) {
      if (!action.pre.empty()) {
        std::vector<Formula> conj;
        for (const auto& f : action.pre) conj.push_back(fluent_at(f, t));
        enc.kb.add(step_label("pre", name, t),
                   Formula::implies(action_at(name, t),
                                    Formula::conjunction(std::move(conj))));
      }
      if (!action.add.empty()) {
        std::vector<Formula> conj;
        for (const auto& f : action.add) conj.push_back(fluent_at(f, t + 1));
        enc.kb.add(step_label("addEff", name, t),
                   Formula::implies(action_at(name, t),
                                    Formula::conjunction(std::move(conj))));
      }
      if (!action.del.empty()) {
        std::vector<Formula> conj;
        for (const auto& f : action.del) {
          conj.push_back(Formula::negate(fluent_at(f, t + 1)));
        }
        enc.kb.add(step_label("delEff", name, t),
                   Formula::implies(action_at(name, t),
                                    Formula::conjunction(std::move(conj))));
      }
    }
  }

  // Explanatory frame axioms; an empty supporter disjunction is the
  // constant false, which forbids the change outright.
  for (int t = 0; t < horizon; ++t) {
    for (const auto& f : problem.fluents) {
      std::vector<Formula> adders;
      std::vector<Formula> deleters;
      for (const auto& [name, action] : problem.actions) {
        if (action.add.count(f) > 0) adders.push_back(action_at(name, t));
        if (action.del.count(f) > 0) deleters.push_back(action_at(name, t));
      }
      Formula add_support = adders.empty() ? Formula::constant(false)
                                           : Formula::disjunction(std::move(adders));
      Formula del_support = deleters.empty()
                                ? Formula::constant(false)
                                : Formula::disjunction(std::move(deleters));
      enc.kb.add(step_label("frameAdd", f, t),
                 Formula::implies(
                     Formula::conjunction({Formula::negate(fluent_at(f, t)),
                                           fluent_at(f, t + 1)}),
                     std::move(add_support)));
      enc.kb.add(step_label("frameDel", f, t),
                 Formula::implies(
                     Formula::conjunction({fluent_at(f, t),
                                           Formula::negate(fluent_at(f, t + 1))}),
                     std::move(del_support)));
    }
  }

  // At most one action per step.
  for (int t = 0; t < horizon; ++t) {
    for (auto first = problem.actions.begin(); first != problem.actions.end(); ++first) {
      for (auto second = std::next(first); second != problem.actions.end(); ++second) {
        enc.kb.add("exclusion:" + first->first + ":" + second->first + ":" +
                       std::to_string(t),
                   Formula::disjunction(
                       {Formula::negate(action_at(first->first, t)),
                        Formula::negate(action_at(second->first, t))}));
      }
    }
  }

  // Goal markers for every step.
  for (int t = 0; t <= horizon; ++t) {
    Formula body = Formula::constant(true);
    if (!problem.goal.empty()) {
      std::vector<Formula> conj;
      for (const auto& f : problem.goal) conj.push_back(fluent_at(f, t));
      body = Formula::conjunction(std::move(conj));
    }
    enc.kb.add("goalDef:" + std::to_string(t),
               Formula::iff(Formula::atom(enc.goal_atoms.at(t)), std::move(body)));
  }

  return enc;
}

Plan extract_plan(const BoundedEncoding& enc, const Model& model) {
  if (!satisfies(model, enc.kb)) {
    throw Error(ErrorKind::Domain, "model does not satisfy the encoding");
  }
  Plan plan;
  for (int t = 0; t < enc.horizon; ++t) {
    const std::string* executed = nullptr;
    for (const auto& [key, atom] : enc.action_atoms) {
      if (key.second != t || !model.is_true(atom)) continue;
      if (executed != nullptr) {
        throw Error(ErrorKind::Domain,
                    "model executes two actions at step " + std::to_string(t));
      }
      executed = &key.first;
    }
    if (executed != nullptr) plan.push_back(*executed);  // action-free steps are no-ops
  }
  return plan;
}

Formula validity_query(const BoundedEncoding& enc, const Plan& plan) {
  if (static_cast<int>(plan.size()) > enc.horizon) {
    throw Error(ErrorKind::Domain, "plan is longer than the encoding horizon");
  }
  std::vector<Formula> conjuncts;
  for (std::size_t t = 0; t < plan.size(); ++t) {
    const auto it = enc.action_atoms.find({plan[t], static_cast<int>(t)});
    if (it == enc.action_atoms.end()) {
      throw Error(ErrorKind::Domain, "plan references unknown action '" + plan[t] + "'");
    }
    conjuncts.push_back(Formula::atom(it->second));
  }
  // Force the trailing steps action-free so the query tests the plan itself.
  for (int t = static_cast<int>(plan.size()); t < enc.horizon; ++t) {
    for (const auto& [key, atom] : enc.action_atoms) {
      if (key.second == t) conjuncts.push_back(Formula::negate(Formula::atom(atom)));
    }
  }
  conjuncts.push_back(Formula::atom(enc.goal_atoms.at(enc.horizon)));
  return Formula::conjunction(std::move(conjuncts));
}

Formula optimality_query(const BoundedEncoding& enc) {
  if (enc.horizon < 1) {
    throw Error(ErrorKind::Domain, "optimality query requires a horizon of at least 1");
  }
  std::vector<Formula> conjuncts;
  for (int t = 0; t < enc.horizon; ++t) {
    conjuncts.push_back(Formula::negate(Formula::atom(enc.goal_atoms.at(t))));
  }
  return Formula::conjunction(std::move(conjuncts));
}

std::optional<std::pair<Plan, int>> solve_with_deepening(const PlanningProblem& problem,
                                                         int max_horizon) {
  if (max_horizon < 0) throw Error(ErrorKind::Domain, "max horizon must be non-negative");
  for (int n = 0; n <= max_horizon; ++n) {
    BoundedEncoding enc = encode_bounded(problem, n, true);
    SatResult result = dpll_sat(to_cnf(enc.kb.conjunction(), enc.kb.signature()));
    if (!result.is_sat()) continue;
    Model projected = result.model->project(enc.kb.signature());
    return std::make_pair(extract_plan(enc, projected), n);
  }
  return std::nullopt;
}

}  // namespace reconcile
