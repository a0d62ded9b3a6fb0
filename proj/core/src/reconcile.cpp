#include "reconcile/reconcile.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "reconcile/errors.hpp"

namespace reconcile {

namespace {

bool formula_in(const std::vector<KbEntry>& entries, const Formula& f) {
  for (const auto& e : entries) {
    if (e.formula == f) return true;
  }
  return false;
}

Signature joint_signature(const KnowledgeBase& kb, const std::vector<KbEntry>& extra) {
  Signature sig = kb.signature();
  for (const auto& e : extra) e.formula.collect_atoms(sig);
  return sig;
}

bool formulas_consistent(const std::vector<Formula>& formulas, const Signature& sig) {
  Formula all = formulas.empty() ? Formula::constant(true)
                                 : Formula::conjunction(formulas);
  return dpll_sat(to_cnf(all, sig)).is_sat();
}

// Entry indices ordered by label; this is the tie-breaking order of every
// subset search here.
std::vector<std::size_t> label_order(const std::vector<KbEntry>& entries) {
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&entries](std::size_t a, std::size_t b) {
    return entries[a].label < entries[b].label;
  });
  return order;
}

// Lexicographic k-combinations of 0..n-1; returns false when exhausted.
bool next_combination(std::vector<std::size_t>& combo, std::size_t n) {
  const std::size_t k = combo.size();
  for (std::size_t i = k; i-- > 0;) {
    if (combo[i] + (k - i) < n) {
      ++combo[i];
      for (std::size_t j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Original KB minus the removed labels, then the new entries appended. Label
// collisions with surviving entries get a numeric suffix.
KnowledgeBase apply_update(const KnowledgeBase& kb, const std::vector<KbEntry>& added,
                           const std::set<std::string>& removed_labels) {
  KnowledgeBase updated{joint_signature(kb, added)};
  for (const auto& entry : kb.entries()) {
    if (removed_labels.count(entry.label) == 0) updated.add(entry.label, entry.formula);
  }
  for (const auto& entry : added) {
    if (updated.contains_formula(entry.formula)) continue;  // set semantics
    std::string label = entry.label;
    for (int suffix = 2; updated.find(label) != nullptr; ++suffix) {
      label = entry.label + "#" + std::to_string(suffix);
    }
    updated.add(std::move(label), entry.formula);
  }
  return updated;
}

KnowledgeBase entries_as_kb(const std::vector<KbEntry>& entries, Signature sig) {
  KnowledgeBase kb{std::move(sig)};
  for (const auto& e : entries) kb.add(e.label, e.formula);
  return kb;
}

void require_consistent_epsilon(const std::vector<KbEntry>& epsilon) {
  Signature sig;
  std::vector<Formula> formulas;
  for (const auto& e : epsilon) {
    e.formula.collect_atoms(sig);
    formulas.push_back(e.formula);
  }
  if (!formulas_consistent(formulas, sig)) {
    throw Error(ErrorKind::Domain,
                "the inserted formula set is inconsistent and cannot be repaired");
  }
}

}  // namespace

UpdateResult update_kb(const KnowledgeBase& kb, const std::vector<KbEntry>& epsilon,
                       const GammaPolicy& policy) {
  require_consistent_epsilon(epsilon);
  if (const auto* trace_policy = std::get_if<GammaTrace>(&policy)) {
    return restore_consistency_by_trace(kb, epsilon, trace_policy->trace,
                                        trace_policy->reference);
  }

  const Signature sig = joint_signature(kb, epsilon);
  std::vector<Formula> eps_formulas;
  for (const auto& e : epsilon) eps_formulas.push_back(e.formula);

  // gamma candidates: entries of KB ∖ epsilon (formula-level set difference)
  std::vector<KbEntry> candidates;
  for (const auto& entry : kb.entries()) {
    if (!formula_in(epsilon, entry.formula)) candidates.push_back(entry);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const KbEntry& a, const KbEntry& b) { return a.label < b.label; });

  const auto consistent_without = [&](const std::set<std::string>& removed) {
    std::vector<Formula> formulas = eps_formulas;
    for (const auto& entry : kb.entries()) {
      if (removed.count(entry.label) == 0) formulas.push_back(entry.formula);
    }
    return formulas_consistent(formulas, sig);
  };

  std::set<std::string> gamma_labels;
  if (std::holds_alternative<GammaNone>(policy)) {
    if (!consistent_without({})) {
      throw Error(ErrorKind::Domain,
                  "update without removal would leave the knowledge base inconsistent");
    }
  } else {
    // Minimum-cardinality gamma, ties broken by label order.
    bool found = consistent_without({});
    for (std::size_t k = 1; !found && k <= candidates.size(); ++k) {
      std::vector<std::size_t> combo(k);
      std::iota(combo.begin(), combo.end(), 0);
      do {
        std::set<std::string> removed;
        for (std::size_t i : combo) removed.insert(candidates[i].label);
        if (consistent_without(removed)) {
          gamma_labels = std::move(removed);
          found = true;
          break;
        }
      } while (next_combination(combo, candidates.size()));
    }
    if (!found) {
      throw Error(ErrorKind::Domain, "no removal set restores consistency");
    }
  }

  UpdateResult result;
  result.updated = apply_update(kb, epsilon, gamma_labels);
  result.added = epsilon;
  for (const auto& entry : candidates) {
    if (gamma_labels.count(entry.label) > 0) result.removed.push_back(entry);
  }
  return result;
}

UpdateResult restore_consistency_by_trace(const KnowledgeBase& kb_h,
                                          const std::vector<KbEntry>& epsilon,
                                          const Model& trace,
                                          const KnowledgeBase& kb_a) {
  for (const auto& entry : kb_a.entries()) {
    if (!entry.formula.evaluate(trace)) {
      throw Error(ErrorKind::Domain,
                  "trace does not satisfy the reference knowledge base ('" +
                      entry.label + "' is false)");
    }
  }

  std::vector<KbEntry> gamma;
  std::set<std::string> gamma_labels;
  for (const auto& entry : kb_h.entries()) {
    if (formula_in(epsilon, entry.formula)) continue;
    if (!entry.formula.evaluate(trace)) {
      gamma.push_back(entry);
      gamma_labels.insert(entry.label);
    }
  }

  // Removed entries are replaced by the reference entries with the same
  // axiom-family label, when such counterparts exist.
  std::vector<KbEntry> added = epsilon;
  for (const auto& removed : gamma) {
    const KbEntry* counterpart = kb_a.find(removed.label);
    if (counterpart != nullptr && !formula_in(added, counterpart->formula)) {
      added.push_back(*counterpart);
    }
  }

  UpdateResult result;
  result.updated = apply_update(kb_h, added, gamma_labels);
  result.added = std::move(added);
  result.removed = std::move(gamma);
  if (!is_consistent(result.updated)) {
    throw Error(ErrorKind::Domain, "trace-based restoration left the result inconsistent");
  }
  return result;
}

bool is_support(const std::vector<KbEntry>& epsilon, const Formula& query,
                EntailmentMode mode) {
  Signature sig;
  for (const auto& e : epsilon) e.formula.collect_atoms(sig);
  query.collect_atoms(sig);
  return entails(entries_as_kb(epsilon, std::move(sig)), query, mode);
}

namespace {

constexpr std::size_t kExhaustiveCap = 16;

std::vector<KbEntry> pick(const std::vector<KbEntry>& entries,
                          const std::vector<std::size_t>& order,
                          const std::vector<std::size_t>& combo) {
  std::vector<KbEntry> subset;
  subset.reserve(combo.size());
  for (std::size_t i : combo) subset.push_back(entries[order[i]]);
  return subset;
}

bool entry_subset(const std::vector<KbEntry>& small, const std::vector<KbEntry>& big) {
  for (const auto& e : small) {
    if (!formula_in(big, e.formula)) return false;
  }
  return true;
}

std::vector<std::vector<KbEntry>> all_supports(const KnowledgeBase& kb,
                                               const Formula& query,
                                               EntailmentMode mode) {
  const auto order = label_order(kb.entries());
  std::vector<std::vector<KbEntry>> supports;
  for (std::size_t k = 0; k <= kb.size(); ++k) {
    if (k == 0) {
      if (is_support({}, query, mode)) supports.push_back({});
      continue;
    }
    std::vector<std::size_t> combo(k);
    std::iota(combo.begin(), combo.end(), 0);
    do {
      auto subset = pick(kb.entries(), order, combo);
      if (is_support(subset, query, mode)) supports.push_back(std::move(subset));
    } while (next_combination(combo, kb.size()));
  }
  return supports;
}

}  // namespace

std::vector<std::vector<KbEntry>> minimal_supports(const KnowledgeBase& kb,
                                                   const Formula& query,
                                                   EntailmentMode mode) {
  if (!entails(kb, query, mode)) {
    throw Error(ErrorKind::Domain, "the knowledge base does not entail the query");
  }
  if (kb.size() > kExhaustiveCap) {
    // Deletion-based minimization of a single support, in label order.
    std::vector<KbEntry> support = kb.entries();
    std::sort(support.begin(), support.end(),
              [](const KbEntry& a, const KbEntry& b) { return a.label < b.label; });
    for (std::size_t i = 0; i < support.size();) {
      std::vector<KbEntry> candidate = support;
      candidate.erase(candidate.begin() + static_cast<std::ptrdiff_t>(i));
      if (is_support(candidate, query, mode)) {
        support = std::move(candidate);
      } else {
        ++i;
      }
    }
    return {support};
  }

  // Size-ascending enumeration: a support is minimal iff no smaller kept
  // support is contained in it.
  std::vector<std::vector<KbEntry>> minimal;
  for (const auto& support : all_supports(kb, query, mode)) {
    bool dominated = false;
    for (const auto& kept : minimal) {
      if (kept.size() < support.size() && entry_subset(kept, support)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) minimal.push_back(support);
  }
  return minimal;
}

std::vector<std::vector<KbEntry>> general_supports(const KnowledgeBase& kb,
                                                   const Formula& query,
                                                   EntailmentMode mode) {
  if (!entails(kb, query, mode)) {
    throw Error(ErrorKind::Domain, "the knowledge base does not entail the query");
  }
  if (kb.size() > kExhaustiveCap) {
    throw Error(ErrorKind::Resource,
                "general-support search is exhaustive and capped at " +
                    std::to_string(kExhaustiveCap) + " entries");
  }
  Signature sig = kb.signature();
  query.collect_atoms(sig);

  const auto supports = all_supports(kb, query, mode);
  std::vector<KnowledgeBase> as_kbs;
  as_kbs.reserve(supports.size());
  for (const auto& s : supports) as_kbs.push_back(entries_as_kb(s, sig));

  std::vector<std::vector<KbEntry>> general;
  for (std::size_t i = 0; i < supports.size(); ++i) {
    bool weaker_exists = false;
    for (std::size_t j = 0; j < supports.size() && !weaker_exists; ++j) {
      if (i != j && subsumes(as_kbs[i], as_kbs[j])) weaker_exists = true;
    }
    if (!weaker_exists) general.push_back(supports[i]);
  }
  return general;
}

std::optional<Explanation> find_explanation(
    const KnowledgeBase& kb_a, const KnowledgeBase& kb_h, const Formula& query,
    EntailmentMode mode, const GammaPolicy& policy,
    const std::map<std::string, double>* weights) {
  if (!entails(kb_a, query, mode)) {
    throw Error(ErrorKind::Domain,
                "the agent knowledge base does not entail the query");
  }
  const auto order = label_order(kb_a.entries());

  const auto try_candidate =
      [&](std::vector<KbEntry> subset, double cost) -> std::optional<Explanation> {
    UpdateResult update;
    try {
      update = update_kb(kb_h, subset, policy);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Domain) return std::nullopt;  // cannot be applied
      throw;
    }
    if (!entails(update.updated, query, mode)) return std::nullopt;
    Explanation explanation;
    explanation.epsilon = std::move(subset);
    explanation.gamma = std::move(update.removed);
    explanation.cost = cost;
    explanation.mode = mode;
    return explanation;
  };

  if (weights == nullptr) {
    // Unit cost: increasing cardinality, label-lexicographic within a size,
    // stopping at the first feasible subset.
    if (auto found = try_candidate({}, 0.0)) return found;
    for (std::size_t k = 1; k <= kb_a.size(); ++k) {
      std::vector<std::size_t> combo(k);
      std::iota(combo.begin(), combo.end(), 0);
      do {
        if (auto found = try_candidate(pick(kb_a.entries(), order, combo),
                                       static_cast<double>(k))) {
          return found;
        }
      } while (next_combination(combo, kb_a.size()));
    }
    return std::nullopt;
  }

  // Weighted search materializes every subset and scans in cost order.
  if (kb_a.size() > kExhaustiveCap) {
    throw Error(ErrorKind::Resource,
                "weighted explanation search is exhaustive and capped at " +
                    std::to_string(kExhaustiveCap) + " entries");
  }
  const auto weight_of = [&weights](const KbEntry& e) {
    const auto it = weights->find(e.label);
    return it == weights->end() ? 1.0 : it->second;
  };
  struct Candidate {
    double cost;
    std::vector<KbEntry> entries;
  };
  std::vector<Candidate> candidates;
  candidates.push_back({0.0, {}});
  for (std::size_t k = 1; k <= kb_a.size(); ++k) {
    std::vector<std::size_t> combo(k);
    std::iota(combo.begin(), combo.end(), 0);
    do {
      auto subset = pick(kb_a.entries(), order, combo);
      double cost = 0.0;
      for (const auto& e : subset) cost += weight_of(e);
      candidates.push_back({cost, std::move(subset)});
    } while (next_combination(combo, kb_a.size()));
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Candidate& a, const Candidate& b) { return a.cost < b.cost; });
  for (auto& candidate : candidates) {
    if (auto found = try_candidate(std::move(candidate.entries), candidate.cost)) {
      return found;
    }
  }
  return std::nullopt;
}

namespace {

// Conjoins the encoding's goal-marker definitions for every marker the KB
// does not already know about.
KnowledgeBase with_goal_definitions(const KnowledgeBase& kb_h, const BoundedEncoding& enc) {
  KnowledgeBase extended = kb_h;
  for (const auto& [t, atom] : enc.goal_atoms) {
    if (extended.signature().contains(atom)) continue;
    const std::string label = "goalDef:" + std::to_string(t);
    const KbEntry* def = enc.kb.find(label);
    if (def == nullptr) continue;
    std::string use = label;
    for (int suffix = 2; extended.find(use) != nullptr; ++suffix) {
      use = label + "#" + std::to_string(suffix);
    }
    extended.add(use, def->formula);
  }
  return extended;
}

}  // namespace

bool check_plan_validity(const KnowledgeBase& kb_h, const BoundedEncoding& enc,
                         const Plan& plan) {
  return entails_credulous(with_goal_definitions(kb_h, enc), validity_query(enc, plan));
}

bool check_plan_optimality(const KnowledgeBase& kb_h, const BoundedEncoding& enc,
                           const Plan& plan) {
  if (!check_plan_validity(kb_h, enc, plan)) return false;
  if (enc.horizon == 0) return true;  // no shorter horizon exists
  return entails_skeptical(with_goal_definitions(kb_h, enc), optimality_query(enc));
}

}  // namespace reconcile
