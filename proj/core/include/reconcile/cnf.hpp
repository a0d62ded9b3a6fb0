#pragma once

#include <vector>

#include "reconcile/formula.hpp"

namespace reconcile {

struct Literal {
  Atom atom;
  bool positive = true;
};

/// Definitional clause form. Equisatisfiable with the source formula; every
/// model of the source extends (uniquely) to a clause-set model, and
/// projecting any clause-set model onto the non-aux atoms yields a source
/// model. `atoms` is the solver universe in branching order: the source
/// signature first, then the aux atoms in creation order.
struct ClauseSet {
  std::vector<std::vector<Literal>> clauses;
  std::vector<Atom> atoms;
  std::vector<Atom> aux_atoms;
};

/// Definitional (auxiliary-variable) transformation. Constants are folded
/// away first; negation is encoded by literal polarity, so aux atoms are
/// introduced only for binary/n-ary connectives. Aux names are chosen
/// disjoint from the source signature.
ClauseSet to_cnf(const Formula& formula);
ClauseSet to_cnf(const Formula& formula, const Signature& source);

}  // namespace reconcile
