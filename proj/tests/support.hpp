#pragma once

// Shared fixtures and independent oracles for the test suites. The oracles
// here (truth-table satisfiability, action-sequence enumeration) must stay
// independent of the CNF/DPLL and encoder paths they are used to check.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "reconcile/belief.hpp"
#include "reconcile/encoding.hpp"
#include "reconcile/errors.hpp"
#include "reconcile/kb.hpp"
#include "reconcile/planning.hpp"
#include "reconcile/reconcile.hpp"
#include "reconcile/solver.hpp"

namespace testsupport {

using namespace reconcile;

inline Formula f(const std::string& text) { return parse_formula(text); }

inline KnowledgeBase kb_of(const std::vector<std::string>& texts,
                           const std::vector<std::string>& extra_atoms = {}) {
  KnowledgeBase kb;
  for (const auto& name : extra_atoms) kb.declare_atom(Atom{name});
  int i = 0;
  for (const auto& text : texts) kb.add("f" + std::to_string(i++), f(text));
  return kb;
}

inline std::set<std::vector<std::string>> model_names(const std::vector<Model>& models) {
  std::set<std::vector<std::string>> out;
  for (const auto& m : models) out.insert(m.true_names());
  return out;
}

inline std::set<std::vector<std::string>> models_of(const KnowledgeBase& kb,
                                                    int cap = 40) {
  return model_names(enumerate_models(kb, cap));
}

// Model equivalence over the union of the two signatures.
inline bool model_equivalent(const KnowledgeBase& lhs, const KnowledgeBase& rhs) {
  Signature sig = lhs.signature();
  sig.merge(rhs.signature());
  KnowledgeBase a{sig};
  for (const auto& e : lhs.entries()) a.add(e.label, e.formula);
  KnowledgeBase b{sig};
  for (const auto& e : rhs.entries()) b.add(e.label, e.formula);
  return models_of(a) == models_of(b);
}

// ---------------------------------------------------------------------------
// Truth-table oracle: direct recursive evaluation, no CNF and no solver.

inline bool oracle_eval(const Formula& formula, const std::set<std::string>& trues) {
  using Kind = Formula::Kind;
  switch (formula.kind()) {
    case Kind::Constant:
      return formula.constant_value();
    case Kind::Atom:
      return trues.count(formula.atom_ref().name) > 0;
    case Kind::Not:
      return !oracle_eval(formula.operands().front(), trues);
    case Kind::And:
      for (const auto& part : formula.operands()) {
        if (!oracle_eval(part, trues)) return false;
      }
      return true;
    case Kind::Or:
      for (const auto& part : formula.operands()) {
        if (oracle_eval(part, trues)) return true;
      }
      return false;
    case Kind::Implies:
      return !oracle_eval(formula.operands()[0], trues) ||
             oracle_eval(formula.operands()[1], trues);
    case Kind::Iff:
      return oracle_eval(formula.operands()[0], trues) ==
             oracle_eval(formula.operands()[1], trues);
  }
  return false;
}

inline std::set<std::set<std::string>> oracle_models(
    const Formula& formula, const std::vector<std::string>& atoms) {
  std::set<std::set<std::string>> out;
  const std::size_t n = atoms.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::set<std::string> trues;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) trues.insert(atoms[i]);
    }
    if (oracle_eval(formula, trues)) out.insert(std::move(trues));
  }
  return out;
}

inline bool oracle_sat(const Formula& formula, const std::vector<std::string>& atoms) {
  return !oracle_models(formula, atoms).empty();
}

// All boolean functions over the given atoms, each materialized as a DNF of
// its minterms (constant false for the empty function). Covers the full
// semantic space over those atoms.
inline std::vector<std::pair<Formula, std::size_t>> all_boolean_functions(
    const std::vector<std::string>& atoms) {
  const std::size_t rows = std::size_t{1} << atoms.size();
  std::vector<std::pair<Formula, std::size_t>> out;
  for (std::size_t function = 0; function < (std::size_t{1} << rows); ++function) {
    std::vector<Formula> minterms;
    for (std::size_t row = 0; row < rows; ++row) {
      if (!(function & (std::size_t{1} << row))) continue;
      std::vector<Formula> literals;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        Formula lit = Formula::atom(atoms[i]);
        if (!(row & (std::size_t{1} << i))) lit = Formula::negate(std::move(lit));
        literals.push_back(std::move(lit));
      }
      minterms.push_back(literals.empty() ? Formula::constant(true)
                                          : Formula::conjunction(std::move(literals)));
    }
    Formula formula = minterms.empty() ? Formula::constant(false)
                                       : Formula::disjunction(std::move(minterms));
    out.emplace_back(std::move(formula), function);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random formula generator (seeded by the caller).

inline Formula random_formula(std::mt19937& rng, const std::vector<std::string>& atoms,
                              int depth) {
  std::uniform_int_distribution<int> percent(0, 99);
  std::uniform_int_distribution<std::size_t> atom_pick(0, atoms.size() - 1);
  if (depth <= 0 || percent(rng) < 25) {
    if (percent(rng) < 6) return Formula::constant(percent(rng) % 2 == 0);
    return Formula::atom(atoms[atom_pick(rng)]);
  }
  switch (percent(rng) % 5) {
    case 0:
      return Formula::negate(random_formula(rng, atoms, depth - 1));
    case 1: {
      std::vector<Formula> parts;
      const int arity = 2 + percent(rng) % 2;
      for (int i = 0; i < arity; ++i) parts.push_back(random_formula(rng, atoms, depth - 1));
      return Formula::conjunction(std::move(parts));
    }
    case 2: {
      std::vector<Formula> parts;
      const int arity = 2 + percent(rng) % 2;
      for (int i = 0; i < arity; ++i) parts.push_back(random_formula(rng, atoms, depth - 1));
      return Formula::disjunction(std::move(parts));
    }
    case 3:
      return Formula::implies(random_formula(rng, atoms, depth - 1),
                              random_formula(rng, atoms, depth - 1));
    default:
      return Formula::iff(random_formula(rng, atoms, depth - 1),
                          random_formula(rng, atoms, depth - 1));
  }
}

// ---------------------------------------------------------------------------
// Paper KBs (Problems 1 and 2) built inline for the unit tests; the data/
// corpus carries the same content for the CLI and acceptance suites.

inline KnowledgeBase paper_kb(const std::vector<std::pair<std::string, std::string>>& rows,
                              const std::vector<std::string>& sig) {
  KnowledgeBase kb;
  for (const auto& name : sig) kb.declare_atom(Atom{name});
  for (const auto& [label, text] : rows) kb.add(label, f(text));
  return kb;
}

inline KnowledgeBase problem1_kb_a() {
  return paper_kb({{"init:P", "P_0"},
                   {"init:E", "!E_0"},
                   {"goal:E", "E_1"},
                   {"pre:A:0", "A_0 -> P_0"},
                   {"addEff:A:0", "A_0 -> E_1"},
                   {"frameAdd:E:0", "!E_0 & E_1 -> A_0"}},
                  {"P_0", "E_0", "E_1", "A_0"});
}

inline KnowledgeBase problem1_kb_h() {
  return paper_kb({{"init:P", "P_0"},
                   {"init:E", "!E_0"},
                   {"goal:E", "E_1"},
                   {"pre:A:0", "A_0 -> P_0"}},
                  {"P_0", "E_0", "E_1", "A_0"});
}

inline std::vector<KbEntry> problem1_epsilon() {
  return {{"addEff:A:0", f("A_0 -> E_1")}, {"frameAdd:E:0", f("!E_0 & E_1 -> A_0")}};
}

inline KnowledgeBase problem2_kb_a() {
  return paper_kb({{"init:P", "P_0"},
                   {"init:E", "!E_0"},
                   {"init:G", "!G_0"},
                   {"goal:G", "G_1"},
                   {"pre:A:0", "A_0 -> P_0"},
                   {"addEff:A:0", "A_0 -> G_1"},
                   {"pre:B:0", "B_0 -> E_0"},
                   {"addEff:B:0", "B_0 -> G_1"},
                   {"frameAdd:G:0", "!G_0 & G_1 -> A_0 | B_0"},
                   {"exclusion:A:B:0", "!A_0 | !B_0"}},
                  {"P_0", "E_0", "G_0", "G_1", "A_0", "B_0"});
}

inline KnowledgeBase problem2_kb_h() {
  return paper_kb({{"init:P", "P_0"},
                   {"init:E", "!E_0"},
                   {"init:G", "!G_0"},
                   {"goal:G", "G_1"},
                   {"pre:A:0", "A_0 -> P_0"},
                   {"pre:B:0", "B_0 -> E_0"},
                   {"addEff:B:0", "B_0 -> G_1"},
                   {"frameAdd:G:0", "!G_0 & G_1 -> B_0"},
                   {"exclusion:A:B:0", "!A_0 | !B_0"}},
                  {"P_0", "E_0", "G_0", "G_1", "A_0", "B_0"});
}

inline std::vector<KbEntry> problem2_epsilon() {
  return {{"addEff:A:0", f("A_0 -> G_1")}, {"frameAdd:G:0", f("!G_0 & G_1 -> A_0 | B_0")}};
}

inline PlanningProblem problem1_domain() {
  return parse_problem(R"({"fluents":["P","E"],
    "actions":[{"name":"A","pre":["P"],"add":["E"],"del":[]}],
    "init":["P"],"goal":["E"]})");
}

inline PlanningProblem problem2_domain() {
  return parse_problem(R"({"fluents":["P","E","G"],
    "actions":[{"name":"A","pre":["P"],"add":["G"],"del":[]},
               {"name":"B","pre":["E"],"add":["G"],"del":[]}],
    "init":["P"],"goal":["G"]})");
}

// ---------------------------------------------------------------------------
// Planning families and the action-sequence oracle.

struct SequenceScan {
  std::optional<std::size_t> optimum;  // min valid length within the bound
  std::vector<Plan> valid;
  std::vector<Plan> invalid;  // capped
};

inline SequenceScan scan_sequences(const PlanningProblem& problem, int max_len) {
  SequenceScan scan;
  std::vector<std::string> names;
  for (const auto& [name, action] : problem.actions) names.push_back(name);

  std::vector<Plan> level{{}};
  for (int len = 0; len <= max_len; ++len) {
    for (const auto& plan : level) {
      if (is_valid_plan(problem, plan)) {
        if (!scan.optimum) scan.optimum = plan.size();
        scan.valid.push_back(plan);
      } else if (scan.invalid.size() < 4) {
        scan.invalid.push_back(plan);
      }
    }
    if (len == max_len || names.empty()) break;
    std::vector<Plan> next;
    next.reserve(level.size() * names.size());
    for (const auto& plan : level) {
      for (const auto& name : names) {
        Plan extended = plan;
        extended.push_back(name);
        next.push_back(std::move(extended));
      }
    }
    level = std::move(next);
  }
  return scan;
}

// Every distinct action shape over the fluents: all precondition subsets
// combined with all per-fluent effect choices (none / add / delete).
inline std::vector<Action> action_shapes(const std::vector<std::string>& fluents) {
  std::vector<Action> shapes;
  const std::size_t n = fluents.size();
  for (std::size_t pre_mask = 0; pre_mask < (std::size_t{1} << n); ++pre_mask) {
    std::vector<std::size_t> effect(n, 0);
    for (;;) {
      Action action;
      for (std::size_t i = 0; i < n; ++i) {
        if (pre_mask & (std::size_t{1} << i)) action.pre.insert(fluents[i]);
        if (effect[i] == 1) action.add.insert(fluents[i]);
        if (effect[i] == 2) action.del.insert(fluents[i]);
      }
      shapes.push_back(std::move(action));
      std::size_t i = 0;
      for (; i < n; ++i) {
        if (++effect[i] < 3) break;
        effect[i] = 0;
      }
      if (i == n) break;
    }
  }
  return shapes;
}

inline PlanningProblem assemble_problem(const std::vector<std::string>& fluents,
                                        const std::vector<Action>& actions,
                                        std::size_t init_mask, std::size_t goal_mask) {
  PlanningProblem problem;
  static const char* kActionNames[] = {"A", "B", "C"};
  problem.fluents.insert(fluents.begin(), fluents.end());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    Action action = actions[i];
    action.name = kActionNames[i];
    problem.actions.emplace(action.name, std::move(action));
  }
  for (std::size_t i = 0; i < fluents.size(); ++i) {
    if (init_mask & (std::size_t{1} << i)) problem.init.insert(fluents[i]);
    if (goal_mask & (std::size_t{1} << i)) problem.goal.insert(fluents[i]);
  }
  return problem;
}

// Exhaustive family over the given fluent count with up to two actions.
inline std::vector<PlanningProblem> exhaustive_family(std::size_t num_fluents) {
  static const std::vector<std::string> kFluents = {"p", "q", "r", "s"};
  std::vector<std::string> fluents(kFluents.begin(), kFluents.begin() + num_fluents);
  const auto shapes = action_shapes(fluents);
  const std::size_t states = std::size_t{1} << num_fluents;

  std::vector<PlanningProblem> family;
  std::vector<std::vector<Action>> action_sets;
  action_sets.push_back({});
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    action_sets.push_back({shapes[i]});
    for (std::size_t j = i + 1; j < shapes.size(); ++j) {
      action_sets.push_back({shapes[i], shapes[j]});
    }
  }
  for (const auto& actions : action_sets) {
    for (std::size_t init = 0; init < states; ++init) {
      for (std::size_t goal = 0; goal < states; ++goal) {
        family.push_back(assemble_problem(fluents, actions, init, goal));
      }
    }
  }
  return family;
}

inline std::vector<PlanningProblem> random_family(std::mt19937& rng, int count) {
  static const std::vector<std::string> kFluents = {"p", "q", "r", "s"};
  std::vector<PlanningProblem> family;
  std::uniform_int_distribution<int> fluent_count(3, 4);
  std::uniform_int_distribution<int> percent(0, 99);
  while (static_cast<int>(family.size()) < count) {
    const int n = fluent_count(rng);
    std::vector<std::string> fluents(kFluents.begin(), kFluents.begin() + n);
    std::vector<Action> actions;
    for (int a = 0; a < 3; ++a) {
      Action action;
      for (const auto& fl : fluents) {
        if (percent(rng) < 35) action.pre.insert(fl);
        const int roll = percent(rng);
        if (roll < 35) {
          action.add.insert(fl);
        } else if (roll < 55) {
          action.del.insert(fl);
        }
      }
      actions.push_back(std::move(action));
    }
    std::size_t init_mask = 0;
    std::size_t goal_mask = 0;
    for (int i = 0; i < n; ++i) {
      if (percent(rng) < 50) init_mask |= std::size_t{1} << i;
      if (percent(rng) < 40) goal_mask |= std::size_t{1} << i;
    }
    family.push_back(assemble_problem(fluents, actions, init_mask, goal_mask));
  }
  return family;
}

}  // namespace testsupport
