#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "reconcile/encoding.hpp"
#include "reconcile/kb.hpp"
#include "reconcile/solver.hpp"

namespace reconcile {

/// How to choose the removal set gamma when updating a knowledge base with
/// new formulas:
///   GammaNone    - remove nothing; fail if the union is inconsistent.
///   GammaMinCard - remove a minimum-cardinality subset restoring
///                  consistency, ties broken by lexicographic label order.
///   GammaTrace   - remove the formulas falsified by a trace model that
///                  satisfies the reference KB, replacing them with the
///                  reference entries sharing their labels.
struct GammaNone {};
struct GammaMinCard {};
struct GammaTrace {
  Model trace;
  KnowledgeBase reference;
};
using GammaPolicy = std::variant<GammaNone, GammaMinCard, GammaTrace>;

struct UpdateResult {
  KnowledgeBase updated;          // original ∪ added ∖ removed, consistent
  std::vector<KbEntry> added;
  std::vector<KbEntry> removed;   // drawn from the original minus epsilon
};

/// KB ∪ epsilon ∖ gamma with gamma picked by the policy. Epsilon must be
/// consistent on its own; the result is always consistent.
UpdateResult update_kb(const KnowledgeBase& kb, const std::vector<KbEntry>& epsilon,
                       const GammaPolicy& policy);

/// Trace-guided consistency restoration: gamma is every formula of
/// kb_h ∖ epsilon that evaluates to false under the trace (atoms outside
/// the trace's signature count as false); removed entries are replaced by
/// the kb_a entries sharing their labels. The trace must satisfy kb_a.
UpdateResult restore_consistency_by_trace(const KnowledgeBase& kb_h,
                                          const std::vector<KbEntry>& epsilon,
                                          const Model& trace,
                                          const KnowledgeBase& kb_a);

/// Whether epsilon alone entails the query in the given mode.
bool is_support(const std::vector<KbEntry>& epsilon, const Formula& query,
                EntailmentMode mode);

/// All subset-minimal supports of the query within the KB, ordered by size
/// then labels. Exhaustive for |kb| <= 16; beyond that a single
/// deletion-minimized support (in label order) is returned.
std::vector<std::vector<KbEntry>> minimal_supports(const KnowledgeBase& kb,
                                                   const Formula& query,
                                                   EntailmentMode mode);

/// The supports whose model sets are not strictly contained in any other
/// support's model set (the weakest supports). Exhaustive; |kb| <= 16.
std::vector<std::vector<KbEntry>> general_supports(const KnowledgeBase& kb,
                                                   const Formula& query,
                                                   EntailmentMode mode);

struct Explanation {
  std::vector<KbEntry> epsilon;  // entries transferred from kb_a
  std::vector<KbEntry> gamma;    // entries removed from kb_h
  double cost = 0.0;             // |epsilon| under the default cost
  EntailmentMode mode = EntailmentMode::Skeptical;
};

/// Minimum-cost epsilon ⊆ kb_a whose application to kb_h (under the gamma
/// policy) yields a consistent KB entailing the query in the given mode.
/// The search enumerates candidates by increasing cost (cardinality under
/// the default weights), label-lexicographic within a cost. kb_a itself
/// must entail the query. Optional per-label weights generalize the cost.
std::optional<Explanation> find_explanation(
    const KnowledgeBase& kb_a, const KnowledgeBase& kb_h, const Formula& query,
    EntailmentMode mode, const GammaPolicy& policy,
    const std::map<std::string, double>* weights = nullptr);

/// Plan validity against a (human) KB: credulous entailment of the pinned
/// validity query. Goal-marker definitions from the encoding are conjoined
/// when the KB's signature lacks them; atoms the KB does not mention are
/// treated as unconstrained.
bool check_plan_validity(const KnowledgeBase& kb_h, const BoundedEncoding& enc,
                         const Plan& plan);

/// Validity plus skeptical entailment of the no-shorter-plan query. For a
/// zero-horizon encoding the second conjunct is vacuous.
bool check_plan_optimality(const KnowledgeBase& kb_h, const BoundedEncoding& enc,
                           const Plan& plan);

}  // namespace reconcile
