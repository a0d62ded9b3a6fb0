#include "reconcile/kb.hpp"

#include <set>
#include <utility>

#include "json.hpp"
#include "reconcile/errors.hpp"

namespace reconcile {

void KnowledgeBase::add(std::string label, Formula formula) {
  if (find(label) != nullptr) {
    throw Error(ErrorKind::Domain, "duplicate knowledge-base label '" + label + "'");
  }
  formula.collect_atoms(signature_);
  entries_.push_back(KbEntry{std::move(label), std::move(formula)});
}

const KbEntry* KnowledgeBase::find(const std::string& label) const {
  for (const auto& entry : entries_) {
    if (entry.label == label) return &entry;
  }
  return nullptr;
}

bool KnowledgeBase::contains_formula(const Formula& formula) const {
  for (const auto& entry : entries_) {
    if (entry.formula == formula) return true;
  }
  return false;
}

Formula KnowledgeBase::conjunction() const {
  if (entries_.empty()) return Formula::constant(true);
  std::vector<Formula> parts;
  parts.reserve(entries_.size());
  for (const auto& entry : entries_) parts.push_back(entry.formula);
  return Formula::conjunction(std::move(parts));
}

bool satisfies(const Model& model, const KnowledgeBase& kb) {
  for (const auto& entry : kb.entries()) {
    if (!entry.formula.evaluate(model)) return false;
  }
  return true;
}

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::Schema, "schema error at " + path + ": " + what);
}

}  // namespace

KnowledgeBase kb_from_json(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("$", "expected an object");
  if (!doc.contains("signature") || !doc["signature"].is_array()) {
    schema_error("$.signature", "expected an array of atom names");
  }
  if (!doc.contains("formulas") || !doc["formulas"].is_array()) {
    schema_error("$.formulas", "expected an array of {label, text} objects");
  }

  Signature sig;
  for (std::size_t i = 0; i < doc["signature"].size(); ++i) {
    const auto& item = doc["signature"][i];
    const std::string path = "$.signature[" + std::to_string(i) + "]";
    if (!item.is_string()) schema_error(path, "expected a string");
    const std::string name = item.get<std::string>();
    if (!is_valid_atom_name(name)) schema_error(path, "invalid atom name '" + name + "'");
    sig.add(Atom{name});
  }

  KnowledgeBase kb{sig};
  std::set<std::string> seen_labels;
  for (std::size_t i = 0; i < doc["formulas"].size(); ++i) {
    const auto& item = doc["formulas"][i];
    const std::string path = "$.formulas[" + std::to_string(i) + "]";
    if (!item.is_object() || !item.contains("label") || !item.contains("text") ||
        !item["label"].is_string() || !item["text"].is_string()) {
      schema_error(path, "expected an object with string fields 'label' and 'text'");
    }
    const std::string label = item["label"].get<std::string>();
    if (!seen_labels.insert(label).second) {
      schema_error(path + ".label", "duplicate label '" + label + "'");
    }
    Formula f = parse_formula(item["text"].get<std::string>());
    for (const auto& a : f.atoms()) {
      if (!sig.contains(a)) {
        schema_error(path + ".text",
                     "atom '" + a.name + "' is not declared in the signature");
      }
    }
    kb.add(label, std::move(f));
  }
  return kb;
}

std::string kb_to_json(const KnowledgeBase& kb) {
  json doc;
  doc["signature"] = json::array();
  for (const auto& a : kb.signature().atoms()) doc["signature"].push_back(a.name);
  doc["formulas"] = json::array();
  for (const auto& entry : kb.entries()) {
    doc["formulas"].push_back({{"label", entry.label}, {"text", entry.formula.to_text()}});
  }
  return doc.dump();
}

}  // namespace reconcile
