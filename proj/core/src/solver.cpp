#include "reconcile/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>

#include "reconcile/errors.hpp"

namespace reconcile {

namespace {

// Clauses over 1-based variable indices; literal sign is polarity.
using IntClause = std::vector<int>;

std::optional<std::vector<signed char>> dpll(const std::vector<IntClause>& clauses,
                                             int num_vars,
                                             std::vector<signed char> assign) {
  for (;;) {
    // Unit propagation / conflict detection, to fixpoint.
    bool changed = false;
    for (const auto& clause : clauses) {
      int free_lit = 0;
      int free_count = 0;
      bool satisfied = false;
      for (int lit : clause) {
        const int v = std::abs(lit) - 1;
        if (assign[v] < 0) {
          ++free_count;
          free_lit = lit;
        } else if ((assign[v] == 1) == (lit > 0)) {
          satisfied = true;
          break;
        }
      }
      if (satisfied) continue;
      if (free_count == 0) return std::nullopt;  // conflict
      if (free_count == 1) {
        assign[std::abs(free_lit) - 1] = free_lit > 0 ? 1 : 0;
        changed = true;
      }
    }
    if (changed) continue;

    // Pure-literal elimination over clauses not yet satisfied.
    std::vector<unsigned char> occurs(static_cast<std::size_t>(num_vars), 0);
    for (const auto& clause : clauses) {
      bool satisfied = false;
      for (int lit : clause) {
        const int v = std::abs(lit) - 1;
        if (assign[v] >= 0 && (assign[v] == 1) == (lit > 0)) {
          satisfied = true;
          break;
        }
      }
      if (satisfied) continue;
      for (int lit : clause) {
        const int v = std::abs(lit) - 1;
        if (assign[v] < 0) occurs[v] |= lit > 0 ? 1u : 2u;
      }
    }
    bool assigned_pure = false;
    for (int v = 0; v < num_vars; ++v) {
      if (assign[v] >= 0) continue;
      if (occurs[v] == 1) {
        assign[v] = 1;
        assigned_pure = true;
      } else if (occurs[v] == 2) {
        assign[v] = 0;
        assigned_pure = true;
      }
    }
    if (!assigned_pure) break;
  }

  // Branch on the lowest-index unassigned variable, true first.
  int branch = -1;
  for (int v = 0; v < num_vars; ++v) {
    if (assign[v] < 0) {
      branch = v;
      break;
    }
  }
  if (branch < 0) return assign;

  auto with_true = assign;
  with_true[branch] = 1;
  if (auto result = dpll(clauses, num_vars, std::move(with_true))) return result;
  assign[branch] = 0;
  return dpll(clauses, num_vars, std::move(assign));
}

struct IntProblem {
  std::vector<IntClause> clauses;
  std::map<Atom, int> var_of;  // 1-based
  int num_vars = 0;
};

IntProblem to_int_problem(const ClauseSet& cs) {
  IntProblem p;
  for (const auto& atom : cs.atoms) {
    p.var_of.emplace(atom, ++p.num_vars);
  }
  p.clauses.reserve(cs.clauses.size());
  for (const auto& clause : cs.clauses) {
    IntClause ic;
    ic.reserve(clause.size());
    for (const auto& lit : clause) {
      const int v = p.var_of.at(lit.atom);
      ic.push_back(lit.positive ? v : -v);
    }
    p.clauses.push_back(std::move(ic));
  }
  return p;
}

Model model_from_assignment(const ClauseSet& cs, const std::vector<signed char>& assign) {
  Signature sig{cs.atoms};
  std::set<Atom> trues;
  for (std::size_t v = 0; v < cs.atoms.size(); ++v) {
    if (assign[v] == 1) trues.insert(cs.atoms[v]);
  }
  return Model(std::move(sig), std::move(trues));
}

Formula conjoin(const KnowledgeBase& kb, const std::vector<Formula>& extra) {
  std::vector<Formula> parts;
  parts.reserve(kb.size() + extra.size());
  for (const auto& entry : kb.entries()) parts.push_back(entry.formula);
  for (const auto& f : extra) parts.push_back(f);
  if (parts.empty()) return Formula::constant(true);
  return Formula::conjunction(std::move(parts));
}

// Satisfiability of the KB conjoined with extra formulas; atoms occurring
// only in the extras join the universe as unconstrained atoms.
bool sat_with(const KnowledgeBase& kb, const std::vector<Formula>& extra) {
  Signature sig = kb.signature();
  for (const auto& f : extra) f.collect_atoms(sig);
  return dpll_sat(to_cnf(conjoin(kb, extra), sig)).is_sat();
}

}  // namespace

SatResult dpll_sat(const ClauseSet& clause_set) {
  IntProblem p = to_int_problem(clause_set);
  std::vector<signed char> assign(static_cast<std::size_t>(p.num_vars), -1);
  auto result = dpll(p.clauses, p.num_vars, std::move(assign));
  if (!result) return SatResult{};
  return SatResult{model_from_assignment(clause_set, *result)};
}

int default_atom_cap() {
  if (const char* env = std::getenv("RECONCILE_ATOM_CAP")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<int>(value);
  }
  return 24;
}

std::vector<Model> enumerate_models(const KnowledgeBase& kb) {
  return enumerate_models(kb, default_atom_cap());
}

std::vector<Model> enumerate_models(const KnowledgeBase& kb, int atom_cap) {
  if (static_cast<int>(kb.signature().size()) > atom_cap) {
    throw Error(ErrorKind::Resource,
                "signature of " + std::to_string(kb.signature().size()) +
                    " atoms exceeds the enumeration cap of " + std::to_string(atom_cap));
  }
  ClauseSet cs = to_cnf(kb.conjunction(), kb.signature());
  IntProblem p = to_int_problem(cs);
  const std::size_t sig_size = kb.signature().size();

  std::vector<Model> models;
  for (;;) {
    std::vector<signed char> assign(static_cast<std::size_t>(p.num_vars), -1);
    auto result = dpll(p.clauses, p.num_vars, assign);
    if (!result) break;
    // Project onto the KB signature and block exactly that projection.
    std::set<Atom> trues;
    IntClause blocking;
    for (std::size_t v = 0; v < sig_size; ++v) {
      if ((*result)[v] == 1) {
        trues.insert(cs.atoms[v]);
        blocking.push_back(-static_cast<int>(v + 1));
      } else {
        blocking.push_back(static_cast<int>(v + 1));
      }
    }
    models.emplace_back(kb.signature(), std::move(trues));
    p.clauses.push_back(std::move(blocking));
  }
  std::sort(models.begin(), models.end(), [](const Model& a, const Model& b) {
    return a.true_names() < b.true_names();
  });
  return models;
}

bool is_consistent(const KnowledgeBase& kb) { return sat_with(kb, {}); }

bool entails_skeptical(const KnowledgeBase& kb, const Formula& query) {
  if (!is_consistent(kb)) return false;  // ACC(KB) must be non-empty
  return !sat_with(kb, {Formula::negate(query)});
}

bool entails_credulous(const KnowledgeBase& kb, const Formula& query) {
  return sat_with(kb, {query});
}

bool entails(const KnowledgeBase& kb, const Formula& query, EntailmentMode mode) {
  return mode == EntailmentMode::Skeptical ? entails_skeptical(kb, query)
                                           : entails_credulous(kb, query);
}

bool subsumes(const KnowledgeBase& kb1, const KnowledgeBase& kb2) {
  if (!kb1.signature().same_atoms(kb2.signature())) {
    throw Error(ErrorKind::Domain, "subsumption requires a shared signature");
  }
  // models(kb1) ⊆ models(kb2), witnessed by kb1 ∧ ¬kb2 being unsatisfiable,
  // plus a strictness witness on the other side.
  const bool included = !sat_with(kb1, {Formula::negate(kb2.conjunction())});
  if (!included) return false;
  return sat_with(kb2, {Formula::negate(kb1.conjunction())});
}

}  // namespace reconcile
