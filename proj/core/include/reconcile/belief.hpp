#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "reconcile/kb.hpp"
#include "reconcile/solver.hpp"

namespace reconcile {

/// Appends the formula; a finite stand-in for the deductive closure
/// (model set = models(kb) ∩ models(phi)). Does not repair inconsistency.
KnowledgeBase expand(const KnowledgeBase& kb, const Formula& phi);

/// AGM-style revision with cardinality (Dalal) distance: keeps the models
/// of phi at minimum Hamming distance from the KB's model set, materialized
/// as a disjunction of full model conjunctions. When kb ∧ phi is consistent
/// this reduces to the union (vacuity). The KB must be consistent and phi
/// satisfiable.
KnowledgeBase revise(const KnowledgeBase& kb, const Formula& phi);

/// KM update, possible-models approach: for each model I of the KB, keeps
/// the models of phi whose atomic difference from I is inclusion-minimal;
/// the result is the union of the selections, materialized like `revise`.
/// Same preconditions as `revise`.
KnowledgeBase update_pma(const KnowledgeBase& kb, const Formula& phi);

/// Atoms whose truth values differ between two models over one signature.
std::set<Atom> diff(const Model& m1, const Model& m2);

struct AbductionProblem {
  KnowledgeBase kb;
  Formula query;
  std::set<Atom> hypotheses;  // abducibles; must lie in the KB signature
};

/// Subset-minimal conjunctions of positive hypothesis atoms alpha with
/// kb ∪ {alpha} consistent and skeptically entailing the query. Hypotheses
/// occurring in the query itself are not assumable (assuming the query
/// outright explains nothing), so a KB without rules connecting the
/// remaining hypotheses to the query yields no explanation, as does an
/// inconsistent KB.
std::vector<Formula> abduce(const AbductionProblem& problem);

struct DiagnosisProblem {
  KnowledgeBase kb;
  std::vector<Formula> observations;
  std::vector<std::string> components;
  std::map<std::string, Atom> ab_atoms;  // component -> "abnormal" atom
};

/// All subset-minimal component sets S such that assuming ab(c) for c in S
/// and !ab(c) for the rest is consistent with the KB and the observations.
/// A healthy system yields the single empty diagnosis. Diagnoses only add
/// assumptions; nothing is ever removed from the KB.
std::vector<std::set<std::string>> diagnose(const DiagnosisProblem& problem);

}  // namespace reconcile
