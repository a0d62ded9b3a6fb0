#include "reconcile/belief.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "reconcile/errors.hpp"

namespace reconcile {

namespace {

std::string fresh_label(const KnowledgeBase& kb, const std::string& base) {
  if (kb.find(base) == nullptr) return base;
  for (int suffix = 2;; ++suffix) {
    std::string label = base + "#" + std::to_string(suffix);
    if (kb.find(label) == nullptr) return label;
  }
}

// One formula per model: atoms in signature order, positive or negated.
Formula model_conjunction(const Model& model) {
  std::vector<Formula> literals;
  for (const auto& atom : model.signature().atoms()) {
    Formula lit = Formula::atom(atom);
    if (!model.is_true(atom)) lit = Formula::negate(std::move(lit));
    literals.push_back(std::move(lit));
  }
  if (literals.empty()) return Formula::constant(true);
  return Formula::conjunction(std::move(literals));
}

KnowledgeBase materialize(const std::vector<Model>& models, const Signature& sig,
                          const std::string& label) {
  std::vector<Formula> shapes;
  shapes.reserve(models.size());
  for (const auto& m : models) shapes.push_back(model_conjunction(m));
  KnowledgeBase out{sig};
  out.add(label, Formula::disjunction(std::move(shapes)));
  return out;
}

struct ChangeContext {
  Signature sig;
  std::vector<Model> kb_models;
  std::vector<Model> phi_models;
};

ChangeContext prepare_change(const KnowledgeBase& kb, const Formula& phi,
                             const char* operation) {
  if (!is_consistent(kb)) {
    throw Error(ErrorKind::Domain,
                std::string(operation) + " requires a consistent knowledge base");
  }
  ChangeContext ctx;
  ctx.sig = kb.signature();
  phi.collect_atoms(ctx.sig);

  KnowledgeBase phi_kb{ctx.sig};
  phi_kb.add("phi", phi);
  ctx.phi_models = enumerate_models(phi_kb);
  if (ctx.phi_models.empty()) {
    throw Error(ErrorKind::Domain,
                std::string(operation) + " requires a satisfiable input formula");
  }

  KnowledgeBase widened{ctx.sig};
  for (const auto& entry : kb.entries()) widened.add(entry.label, entry.formula);
  ctx.kb_models = enumerate_models(widened);
  return ctx;
}

}  // namespace

KnowledgeBase expand(const KnowledgeBase& kb, const Formula& phi) {
  KnowledgeBase out = kb;
  out.add(fresh_label(out, "expansion"), phi);
  return out;
}

KnowledgeBase revise(const KnowledgeBase& kb, const Formula& phi) {
  ChangeContext ctx = prepare_change(kb, phi, "revision");

  // Dalal: keep the phi-models at minimum Hamming distance from the KB.
  std::vector<std::size_t> distances;
  std::size_t best = SIZE_MAX;
  for (const auto& j : ctx.phi_models) {
    std::size_t d = SIZE_MAX;
    for (const auto& i : ctx.kb_models) d = std::min(d, diff(i, j).size());
    distances.push_back(d);
    best = std::min(best, d);
  }
  std::vector<Model> selected;
  for (std::size_t idx = 0; idx < ctx.phi_models.size(); ++idx) {
    if (distances[idx] == best) selected.push_back(ctx.phi_models[idx]);
  }
  return materialize(selected, ctx.sig, "revised");
}

KnowledgeBase update_pma(const KnowledgeBase& kb, const Formula& phi) {
  ChangeContext ctx = prepare_change(kb, phi, "update");

  // Winslett: per KB model, keep the phi-models with inclusion-minimal
  // atomic difference; the result is the union of the selections.
  std::vector<bool> selected(ctx.phi_models.size(), false);
  for (const auto& i : ctx.kb_models) {
    std::vector<std::set<Atom>> diffs;
    diffs.reserve(ctx.phi_models.size());
    for (const auto& j : ctx.phi_models) diffs.push_back(diff(i, j));
    for (std::size_t a = 0; a < diffs.size(); ++a) {
      bool minimal = true;
      for (std::size_t b = 0; b < diffs.size() && minimal; ++b) {
        if (b != a && diffs[b].size() < diffs[a].size() &&
            std::includes(diffs[a].begin(), diffs[a].end(), diffs[b].begin(),
                          diffs[b].end())) {
          minimal = false;
        }
      }
      if (minimal) selected[a] = true;
    }
  }
  std::vector<Model> chosen;
  for (std::size_t idx = 0; idx < ctx.phi_models.size(); ++idx) {
    if (selected[idx]) chosen.push_back(ctx.phi_models[idx]);
  }
  return materialize(chosen, ctx.sig, "updated");
}

std::set<Atom> diff(const Model& m1, const Model& m2) {
  if (!m1.signature().same_atoms(m2.signature())) {
    throw Error(ErrorKind::Domain, "diff requires models over one signature");
  }
  std::set<Atom> out;
  std::set_symmetric_difference(m1.true_atoms().begin(), m1.true_atoms().end(),
                                m2.true_atoms().begin(), m2.true_atoms().end(),
                                std::inserter(out, out.begin()));
  return out;
}

namespace {

bool next_combination(std::vector<std::size_t>& combo, std::size_t n) {
  const std::size_t k = combo.size();
  for (std::size_t i = k; i-- > 0;) {
    if (combo[i] + (k - i) < n) {
      ++combo[i];
      for (std::size_t j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

template <typename Element, typename Solution>
std::vector<std::vector<Element>> subset_minimal_solutions(
    const std::vector<Element>& pool, Solution&& is_solution) {
  std::vector<std::vector<Element>> minimal;
  const auto dominated = [&minimal](const std::vector<Element>& candidate) {
    for (const auto& kept : minimal) {
      if (kept.size() < candidate.size() &&
          std::includes(candidate.begin(), candidate.end(), kept.begin(), kept.end())) {
        return true;
      }
    }
    return false;
  };
  for (std::size_t k = 0; k <= pool.size(); ++k) {
    if (k == 0) {
      if (is_solution(std::vector<Element>{})) minimal.push_back({});
      continue;
    }
    std::vector<std::size_t> combo(k);
    std::iota(combo.begin(), combo.end(), 0);
    do {
      std::vector<Element> subset;
      subset.reserve(k);
      for (std::size_t i : combo) subset.push_back(pool[i]);
      if (!dominated(subset) && is_solution(subset)) minimal.push_back(std::move(subset));
    } while (next_combination(combo, pool.size()));
  }
  return minimal;
}

}  // namespace

std::vector<Formula> abduce(const AbductionProblem& problem) {
  // Assuming (part of) the query outright explains nothing, so query atoms
  // are not assumable.
  Signature query_sig;
  problem.query.collect_atoms(query_sig);
  std::vector<Atom> assumable;
  for (const auto& atom : problem.hypotheses) {
    if (!query_sig.contains(atom)) assumable.push_back(atom);
  }
  std::sort(assumable.begin(), assumable.end());

  const auto explains = [&problem](const std::vector<Atom>& atoms) {
    std::vector<Formula> literals;
    for (const auto& a : atoms) literals.push_back(Formula::atom(a));
    Formula alpha = literals.empty() ? Formula::constant(true)
                                     : Formula::conjunction(std::move(literals));
    KnowledgeBase augmented = problem.kb;
    augmented.add(fresh_label(augmented, "hypothesis"), alpha);
    return entails_skeptical(augmented, problem.query);  // implies consistency
  };

  std::vector<Formula> explanations;
  for (const auto& atoms : subset_minimal_solutions(assumable, explains)) {
    std::vector<Formula> literals;
    for (const auto& a : atoms) literals.push_back(Formula::atom(a));
    explanations.push_back(literals.empty() ? Formula::constant(true)
                                            : Formula::conjunction(std::move(literals)));
  }
  return explanations;
}

std::vector<std::set<std::string>> diagnose(const DiagnosisProblem& problem) {
  for (const auto& [component, atom] : problem.ab_atoms) {
    if (std::count_if(problem.ab_atoms.begin(), problem.ab_atoms.end(),
                      [&atom](const auto& kv) { return kv.second == atom; }) > 1) {
      throw Error(ErrorKind::Domain, "ab atom '" + atom.name + "' used for two components");
    }
  }

  std::vector<std::string> components = problem.components;
  std::sort(components.begin(), components.end());

  const auto consistent_with = [&problem](const std::vector<std::string>& faulty) {
    KnowledgeBase augmented = problem.kb;
    for (std::size_t i = 0; i < problem.observations.size(); ++i) {
      augmented.add(fresh_label(augmented, "obs:" + std::to_string(i)),
                    problem.observations[i]);
    }
    for (const auto& component : problem.components) {
      const auto it = problem.ab_atoms.find(component);
      if (it == problem.ab_atoms.end()) {
        throw Error(ErrorKind::Domain, "component '" + component + "' has no ab atom");
      }
      Formula lit = Formula::atom(it->second);
      const bool is_faulty =
          std::find(faulty.begin(), faulty.end(), component) != faulty.end();
      if (!is_faulty) lit = Formula::negate(std::move(lit));
      augmented.add(fresh_label(augmented, "ab:" + component), std::move(lit));
    }
    return is_consistent(augmented);
  };

  std::vector<std::set<std::string>> diagnoses;
  for (const auto& faulty : subset_minimal_solutions(components, consistent_with)) {
    diagnoses.emplace_back(faulty.begin(), faulty.end());
  }
  return diagnoses;
}

}  // namespace reconcile
