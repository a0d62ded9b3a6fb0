#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reconcile/formula.hpp"

namespace reconcile {

struct KbEntry {
  std::string label;
  Formula formula;
};

/// Labeled, ordered set of formulas over an explicit signature. Reasoning is
/// set-semantic; entry order only drives deterministic tie-breaking, and
/// labels must be unique. The signature always covers every atom occurring
/// in the entries (adding an entry extends it as needed).
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  explicit KnowledgeBase(Signature signature) : signature_(std::move(signature)) {}

  /// Appends an entry; throws on duplicate label.
  void add(std::string label, Formula formula);
  void declare_atom(const Atom& atom) { signature_.add(atom); }

  const std::vector<KbEntry>& entries() const { return entries_; }
  const Signature& signature() const { return signature_; }
  std::size_t size() const { return entries_.size(); }

  const KbEntry* find(const std::string& label) const;
  bool contains_formula(const Formula& formula) const;

  /// Conjunction of all entry formulas; `true` when empty.
  Formula conjunction() const;

 private:
  std::vector<KbEntry> entries_;
  Signature signature_;
};

/// True iff every entry evaluates to true under the model.
bool satisfies(const Model& model, const KnowledgeBase& kb);

/// KB file format: { "signature": [atom, ...],
///                   "formulas": [ {"label": str, "text": str}, ... ] }.
/// The declared signature must cover every atom used by the formulas.
KnowledgeBase kb_from_json(const std::string& json_text);
std::string kb_to_json(const KnowledgeBase& kb);

}  // namespace reconcile
