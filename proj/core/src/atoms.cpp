#include "reconcile/atoms.hpp"

#include <algorithm>
#include <cctype>

#include "reconcile/errors.hpp"

namespace reconcile {

bool is_valid_atom_name(const std::string& name) {
  std::size_t i = 0;
  const std::size_t n = name.size();
  if (n == 0 || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (i = 1; i < n && std::isalnum(static_cast<unsigned char>(name[i])); ++i) {
  }
  if (i == n) return true;
  // optional `_<digits>` timestep suffix
  if (name[i] != '_' || i + 1 == n) return false;
  for (++i; i < n; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  }
  return true;
}

Signature::Signature(std::vector<Atom> atoms) {
  for (auto& a : atoms) add(a);
}

void Signature::add(const Atom& atom) {
  if (!is_valid_atom_name(atom.name)) {
    throw Error(ErrorKind::Schema, "invalid atom name '" + atom.name + "'");
  }
  if (index_.insert(atom).second) atoms_.push_back(atom);
}

void Signature::merge(const Signature& other) {
  for (const auto& a : other.atoms()) add(a);
}

Model::Model(Signature signature, std::set<Atom> true_atoms)
    : signature_(std::move(signature)), true_atoms_(std::move(true_atoms)) {
  for (const auto& a : true_atoms_) {
    if (!signature_.contains(a)) {
      throw Error(ErrorKind::Domain,
                  "model assigns atom '" + a.name + "' outside its signature");
    }
  }
}

std::vector<std::string> Model::true_names() const {
  std::vector<std::string> names;
  names.reserve(true_atoms_.size());
  for (const auto& a : true_atoms_) names.push_back(a.name);
  return names;  // std::set iteration is already sorted
}

Model Model::project(const Signature& onto) const {
  std::set<Atom> kept;
  for (const auto& a : true_atoms_) {
    if (onto.contains(a)) kept.insert(a);
  }
  return Model(onto, std::move(kept));
}

bool Model::operator==(const Model& other) const {
  return true_atoms_ == other.true_atoms_ && signature_.same_atoms(other.signature_);
}

}  // namespace reconcile
