#pragma once

#include <memory>
#include <string>
#include <vector>

#include "reconcile/atoms.hpp"

namespace reconcile {

/// Immutable propositional formula AST. Nodes are shared, so copies are
/// cheap and formulas are safe to pass around and hold in containers.
///
/// `conjunction`/`disjunction` take non-empty operand lists and unwrap
/// singletons; together with the minimal-parentheses printer this makes
/// parse(to_text(f)) structurally equal to f.
class Formula {
 public:
  enum class Kind { Constant, Atom, Not, And, Or, Implies, Iff };

  static Formula constant(bool value);
  static Formula atom(Atom atom);
  static Formula atom(std::string name);
  static Formula negate(Formula operand);
  static Formula conjunction(std::vector<Formula> parts);
  static Formula disjunction(std::vector<Formula> parts);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula iff(Formula lhs, Formula rhs);

  Kind kind() const;
  bool constant_value() const;               // Kind::Constant only
  const Atom& atom_ref() const;              // Kind::Atom only
  const std::vector<Formula>& operands() const;

  /// Structural equality.
  bool operator==(const Formula& other) const;

  /// Renders with minimal parentheses in the fixed text grammar.
  std::string to_text() const;

  /// Truth value under a total assignment; atoms the model does not list
  /// as true are false.
  bool evaluate(const Model& model) const;

  void collect_atoms(Signature& sig) const;
  std::vector<Atom> atoms() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses the fixed text grammar: atoms per `is_valid_atom_name`, constants
/// `true`/`false`, operators `!` > `&` > `|` > `->` > `<->` with the two
/// arrows right-associative, parentheses, whitespace-insensitive.
/// Throws SyntaxError with byte offset and expected-token set.
Formula parse_formula(const std::string& text);

}  // namespace reconcile
