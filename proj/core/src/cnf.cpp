#include "reconcile/cnf.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>

#include "reconcile/errors.hpp"

namespace reconcile {

namespace {

using Kind = Formula::Kind;

// Constant folding; afterwards the tree is either a single constant or
// entirely constant-free. Double negations are folded as well.
Formula simplify(const Formula& f) {
  switch (f.kind()) {
    case Kind::Constant:
    case Kind::Atom:
      return f;
    case Kind::Not: {
      Formula inner = simplify(f.operands().front());
      if (inner.kind() == Kind::Constant) return Formula::constant(!inner.constant_value());
      if (inner.kind() == Kind::Not) return inner.operands().front();
      return Formula::negate(std::move(inner));
    }
    case Kind::And: {
      std::vector<Formula> parts;
      for (const auto& part : f.operands()) {
        Formula s = simplify(part);
        if (s.kind() == Kind::Constant) {
          if (!s.constant_value()) return Formula::constant(false);
          continue;  // drop neutral element
        }
        parts.push_back(std::move(s));
      }
      if (parts.empty()) return Formula::constant(true);
      return Formula::conjunction(std::move(parts));
    }
    case Kind::Or: {
      std::vector<Formula> parts;
      for (const auto& part : f.operands()) {
        Formula s = simplify(part);
        if (s.kind() == Kind::Constant) {
          if (s.constant_value()) return Formula::constant(true);
          continue;
        }
        parts.push_back(std::move(s));
      }
      if (parts.empty()) return Formula::constant(false);
      return Formula::disjunction(std::move(parts));
    }
    case Kind::Implies: {
      Formula lhs = simplify(f.operands()[0]);
      Formula rhs = simplify(f.operands()[1]);
      if (lhs.kind() == Kind::Constant) {
        return lhs.constant_value() ? rhs : Formula::constant(true);
      }
      if (rhs.kind() == Kind::Constant) {
        return rhs.constant_value() ? Formula::constant(true)
                                    : simplify(Formula::negate(std::move(lhs)));
      }
      return Formula::implies(std::move(lhs), std::move(rhs));
    }
    case Kind::Iff: {
      Formula lhs = simplify(f.operands()[0]);
      Formula rhs = simplify(f.operands()[1]);
      if (lhs.kind() == Kind::Constant) {
        return lhs.constant_value() ? rhs : simplify(Formula::negate(std::move(rhs)));
      }
      if (rhs.kind() == Kind::Constant) {
        return rhs.constant_value() ? lhs : simplify(Formula::negate(std::move(lhs)));
      }
      return Formula::iff(std::move(lhs), std::move(rhs));
    }
  }
  return f;
}

class CnfBuilder {
 public:
  explicit CnfBuilder(const Signature& source) {
    for (const auto& a : source.atoms()) {
      source_names_.insert(a.name);
      var_of_[a] = next_var_++;
      result_.atoms.push_back(a);
    }
  }

  // Encodes the subtree and returns its defining literal (negative literals
  // encode Not nodes, so negation never allocates an aux variable).
  int encode(const Formula& f) {
    switch (f.kind()) {
      case Kind::Atom:
        return var_of_.at(f.atom_ref());
      case Kind::Not:
        return -encode(f.operands().front());
      case Kind::And: {
        std::vector<int> lits;
        for (const auto& part : f.operands()) lits.push_back(encode(part));
        const int v = fresh_aux();
        std::vector<int> big{v};
        for (int l : lits) {
          add_clause({-v, l});
          big.push_back(-l);
        }
        add_clause(std::move(big));
        return v;
      }
      case Kind::Or: {
        std::vector<int> lits;
        for (const auto& part : f.operands()) lits.push_back(encode(part));
        const int v = fresh_aux();
        std::vector<int> big{-v};
        for (int l : lits) {
          add_clause({v, -l});
          big.push_back(l);
        }
        add_clause(std::move(big));
        return v;
      }
      case Kind::Implies: {
        const int a = encode(f.operands()[0]);
        const int b = encode(f.operands()[1]);
        const int v = fresh_aux();
        add_clause({-v, -a, b});
        add_clause({v, a});
        add_clause({v, -b});
        return v;
      }
      case Kind::Iff: {
        const int a = encode(f.operands()[0]);
        const int b = encode(f.operands()[1]);
        const int v = fresh_aux();
        add_clause({-v, -a, b});
        add_clause({-v, a, -b});
        add_clause({v, a, b});
        add_clause({v, -a, -b});
        return v;
      }
      case Kind::Constant:
        throw Error(ErrorKind::Domain, "constant reached the clause builder");
    }
    throw Error(ErrorKind::Domain, "unreachable formula kind");
  }

  void add_unit(int lit) { add_clause({lit}); }
  void add_empty_clause() { result_.clauses.emplace_back(); }

  ClauseSet take() { return std::move(result_); }

 private:
  int fresh_aux() {
    std::string name;
    do {
      name = "aux" + std::to_string(aux_counter_++);
    } while (source_names_.count(name) > 0);
    Atom atom{name};
    var_of_[atom] = next_var_;
    result_.atoms.push_back(atom);
    result_.aux_atoms.push_back(atom);
    return next_var_++;
  }

  void add_clause(std::vector<int> lits) {
    std::vector<Literal> clause;
    clause.reserve(lits.size());
    for (int l : lits) {
      clause.push_back(Literal{result_.atoms[static_cast<std::size_t>(std::abs(l)) - 1],
                               l > 0});
    }
    result_.clauses.push_back(std::move(clause));
  }

  ClauseSet result_;
  std::map<Atom, int> var_of_;
  std::set<std::string> source_names_;
  int next_var_ = 1;
  int aux_counter_ = 0;
};

}  // namespace

ClauseSet to_cnf(const Formula& formula, const Signature& source) {
  Signature sig = source;
  formula.collect_atoms(sig);  // tolerate callers passing a narrower signature
  CnfBuilder builder(sig);

  const Formula reduced = simplify(formula);
  if (reduced.kind() == Kind::Constant) {
    ClauseSet cs = builder.take();
    if (!reduced.constant_value()) cs.clauses.emplace_back();
    return cs;
  }
  if (reduced.kind() == Kind::And) {
    // Top-level conjunctions assert each conjunct directly.
    for (const auto& part : reduced.operands()) builder.add_unit(builder.encode(part));
  } else {
    builder.add_unit(builder.encode(reduced));
  }
  return builder.take();
}

ClauseSet to_cnf(const Formula& formula) {
  Signature sig;
  formula.collect_atoms(sig);
  return to_cnf(formula, sig);
}

}  // namespace reconcile
