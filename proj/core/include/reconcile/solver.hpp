#pragma once

#include <optional>
#include <vector>

#include "reconcile/cnf.hpp"
#include "reconcile/kb.hpp"

namespace reconcile {

struct SatResult {
  /// Total assignment over the clause set's atom universe when satisfiable.
  std::optional<Model> model;

  bool is_sat() const { return model.has_value(); }
};

/// DPLL with unit propagation and pure-literal elimination. Sound and
/// complete, and deterministic: branches on the lowest-index unassigned
/// atom, trying true first.
SatResult dpll_sat(const ClauseSet& clause_set);

/// Enumeration cap (atom count) guarding the exponential operations.
/// RECONCILE_ATOM_CAP overrides the default of 24.
int default_atom_cap();

/// All models of the KB over its signature, via repeated DPLL runs with
/// blocking clauses. Aux atoms are projected away; results are sorted by
/// true-atom lists. Empty iff the KB is inconsistent.
/// Throws a resource error when the signature exceeds the cap.
std::vector<Model> enumerate_models(const KnowledgeBase& kb);
std::vector<Model> enumerate_models(const KnowledgeBase& kb, int atom_cap);

bool is_consistent(const KnowledgeBase& kb);

enum class EntailmentMode { Skeptical, Credulous };

/// Skeptical entailment: the KB is consistent and every model satisfies the
/// query. An inconsistent KB entails nothing (no vacuous entailment).
bool entails_skeptical(const KnowledgeBase& kb, const Formula& query);

/// Credulous entailment: some model of the KB satisfies the query.
bool entails_credulous(const KnowledgeBase& kb, const Formula& query);

bool entails(const KnowledgeBase& kb, const Formula& query, EntailmentMode mode);

/// Strict model-set inclusion: models(kb1) is a proper subset of
/// models(kb2). Both KBs must share one signature (as a set).
bool subsumes(const KnowledgeBase& kb1, const KnowledgeBase& kb2);

}  // namespace reconcile
