#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace reconcile {

/// A propositional variable. Names follow `[A-Za-z][A-Za-z0-9]*(_[0-9]+)?`;
/// the optional numeric suffix is the timestep index when the atom comes
/// from a planning encoding (e.g. "A_0", "P_1", "goal_2").
struct Atom {
  std::string name;

  auto operator<=>(const Atom&) const = default;
};

bool is_valid_atom_name(const std::string& name);

/// Ordered atom universe. Every formula is interpreted relative to one, and
/// models are total assignments over it. Insertion order is preserved; it is
/// the branching order of the solver and the only source of tie-breaking.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Atom> atoms);

  /// Idempotent; keeps first-come order. Rejects malformed names.
  void add(const Atom& atom);
  bool contains(const Atom& atom) const { return index_.count(atom) > 0; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  /// Set equality, insensitive to insertion order.
  bool same_atoms(const Signature& other) const { return index_ == other.index_; }

  void merge(const Signature& other);

 private:
  std::vector<Atom> atoms_;
  std::set<Atom> index_;
};

/// Total truth assignment over a signature: atoms in `true_atoms` hold and
/// every other signature atom is false. Atoms outside the signature also
/// evaluate to false, which is what trace-based formula checks rely on.
class Model {
 public:
  Model() = default;
  Model(Signature signature, std::set<Atom> true_atoms);

  bool is_true(const Atom& atom) const { return true_atoms_.count(atom) > 0; }
  const std::set<Atom>& true_atoms() const { return true_atoms_; }
  const Signature& signature() const { return signature_; }

  /// Sorted names of the true atoms; the canonical external representation.
  std::vector<std::string> true_names() const;

  /// Restriction to a smaller signature (drops truth values outside it).
  Model project(const Signature& onto) const;

  bool operator==(const Model& other) const;

 private:
  Signature signature_;
  std::set<Atom> true_atoms_;
};

}  // namespace reconcile
