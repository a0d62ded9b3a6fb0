#include "reconcile/formula.hpp"

#include <utility>

#include "reconcile/errors.hpp"

namespace reconcile {

struct Formula::Node {
  Kind kind;
  bool value = false;             // Constant
  Atom atom;                      // Atom
  std::vector<Formula> operands;  // Not (1), And/Or (>=2), Implies/Iff (2)
};

namespace {

Formula::Kind node_kind_check(Formula::Kind actual, Formula::Kind wanted) {
  if (actual != wanted) {
    throw Error(ErrorKind::Domain, "formula node accessed with the wrong kind");
  }
  return actual;
}

}  // namespace

Formula Formula::constant(bool value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Constant;
  node->value = value;
  return Formula(std::move(node));
}

Formula Formula::atom(Atom atom) {
  if (!is_valid_atom_name(atom.name)) {
    throw Error(ErrorKind::Schema, "invalid atom name '" + atom.name + "'");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Atom;
  node->atom = std::move(atom);
  return Formula(std::move(node));
}

Formula Formula::atom(std::string name) { return atom(Atom{std::move(name)}); }

Formula Formula::negate(Formula operand) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Not;
  node->operands.push_back(std::move(operand));
  return Formula(std::move(node));
}

Formula Formula::conjunction(std::vector<Formula> parts) {
  if (parts.empty()) throw Error(ErrorKind::Domain, "empty conjunction");
  if (parts.size() == 1) return parts.front();
  auto node = std::make_shared<Node>();
  node->kind = Kind::And;
  node->operands = std::move(parts);
  return Formula(std::move(node));
}

Formula Formula::disjunction(std::vector<Formula> parts) {
  if (parts.empty()) throw Error(ErrorKind::Domain, "empty disjunction");
  if (parts.size() == 1) return parts.front();
  auto node = std::make_shared<Node>();
  node->kind = Kind::Or;
  node->operands = std::move(parts);
  return Formula(std::move(node));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Implies;
  node->operands.push_back(std::move(lhs));
  node->operands.push_back(std::move(rhs));
  return Formula(std::move(node));
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Iff;
  node->operands.push_back(std::move(lhs));
  node->operands.push_back(std::move(rhs));
  return Formula(std::move(node));
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::constant_value() const {
  node_kind_check(node_->kind, Kind::Constant);
  return node_->value;
}

const Atom& Formula::atom_ref() const {
  node_kind_check(node_->kind, Kind::Atom);
  return node_->atom;
}

const std::vector<Formula>& Formula::operands() const { return node_->operands; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::Constant:
      return node_->value == other.node_->value;
    case Kind::Atom:
      return node_->atom == other.node_->atom;
    default: {
      const auto& a = node_->operands;
      const auto& b = other.node_->operands;
      if (a.size() != b.size()) return false;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] == b[i])) return false;
      }
      return true;
    }
  }
}

namespace {

// Binding strength; parentheses are emitted when a child binds no tighter
// than its context requires.
int precedence(Formula::Kind kind) {
  switch (kind) {
    case Formula::Kind::Iff:
      return 1;
    case Formula::Kind::Implies:
      return 2;
    case Formula::Kind::Or:
      return 3;
    case Formula::Kind::And:
      return 4;
    case Formula::Kind::Not:
      return 5;
    default:
      return 6;
  }
}

void render(const Formula& f, std::string& out) {
  const auto paren = [&out](const Formula& child, int min_prec) {
    const bool need = precedence(child.kind()) < min_prec;
    if (need) out.push_back('(');
    render(child, out);
    if (need) out.push_back(')');
  };
  switch (f.kind()) {
    case Formula::Kind::Constant:
      out += f.constant_value() ? "true" : "false";
      return;
    case Formula::Kind::Atom:
      out += f.atom_ref().name;
      return;
    case Formula::Kind::Not:
      out.push_back('!');
      paren(f.operands().front(), 5);
      return;
    case Formula::Kind::And: {
      bool first = true;
      for (const auto& part : f.operands()) {
        if (!first) out += " & ";
        first = false;
        paren(part, 5);  // nested And keeps its parentheses
      }
      return;
    }
    case Formula::Kind::Or: {
      bool first = true;
      for (const auto& part : f.operands()) {
        if (!first) out += " | ";
        first = false;
        paren(part, 4);
      }
      return;
    }
    case Formula::Kind::Implies:
      paren(f.operands()[0], 3);
      out += " -> ";
      paren(f.operands()[1], 2);  // right-associative
      return;
    case Formula::Kind::Iff:
      paren(f.operands()[0], 2);
      out += " <-> ";
      paren(f.operands()[1], 1);
      return;
  }
}

}  // namespace

std::string Formula::to_text() const {
  std::string out;
  render(*this, out);
  return out;
}

bool Formula::evaluate(const Model& model) const {
  switch (node_->kind) {
    case Kind::Constant:
      return node_->value;
    case Kind::Atom:
      return model.is_true(node_->atom);
    case Kind::Not:
      return !node_->operands.front().evaluate(model);
    case Kind::And:
      for (const auto& part : node_->operands) {
        if (!part.evaluate(model)) return false;
      }
      return true;
    case Kind::Or:
      for (const auto& part : node_->operands) {
        if (part.evaluate(model)) return true;
      }
      return false;
    case Kind::Implies:
      return !node_->operands[0].evaluate(model) || node_->operands[1].evaluate(model);
    case Kind::Iff:
      return node_->operands[0].evaluate(model) == node_->operands[1].evaluate(model);
  }
  return false;
}

void Formula::collect_atoms(Signature& sig) const {
  switch (node_->kind) {
    case Kind::Constant:
      return;
    case Kind::Atom:
      sig.add(node_->atom);
      return;
    default:
      for (const auto& part : node_->operands) part.collect_atoms(sig);
  }
}

std::vector<Atom> Formula::atoms() const {
  Signature sig;
  collect_atoms(sig);
  return sig.atoms();
}

}  // namespace reconcile
