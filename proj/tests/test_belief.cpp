#include <random>

#include "doctest.h"
#include "reconcile/belief.hpp"
#include "reconcile/errors.hpp"
#include "support.hpp"

using namespace reconcile;
using testsupport::f;
using testsupport::kb_of;
using testsupport::model_equivalent;
using testsupport::models_of;

TEST_CASE("expand appends without repairing") {
  CHECK(models_of(expand(kb_of({"p"}), f("q"))) ==
        std::set<std::vector<std::string>>{{"p", "q"}});

  KnowledgeBase joined = expand(testsupport::problem1_kb_h(),
                                Formula::conjunction({f("A_0 -> E_1"),
                                                      f("!E_0 & E_1 -> A_0")}));
  KnowledgeBase unioned = testsupport::problem1_kb_h();
  for (const auto& e : testsupport::problem1_epsilon()) unioned.add(e.label, e.formula);
  CHECK(model_equivalent(joined, unioned));

  CHECK(models_of(expand(kb_of({"p"}), f("!p"))).empty());
}

TEST_CASE("revise follows the distance-minimal characterization") {
  // Example: KB = {(a & !b) | (!a & b)} revised with a keeps only a & !b.
  KnowledgeBase xor_kb = kb_of({"(a & !b) | (!a & b)"});
  CHECK(model_equivalent(revise(xor_kb, f("a")), kb_of({"a & !b"})));

  // Problem 1: the union is consistent, so revision is the trivial update.
  KnowledgeBase epsilon_conj = kb_of({}, {"P_0", "E_0", "E_1", "A_0"});
  Formula eps = Formula::conjunction({f("A_0 -> E_1"), f("!E_0 & E_1 -> A_0")});
  KnowledgeBase unioned = testsupport::problem1_kb_h();
  for (const auto& e : testsupport::problem1_epsilon()) unioned.add(e.label, e.formula);
  CHECK(model_equivalent(revise(testsupport::problem1_kb_h(), eps), unioned));

  // Problem 2: the human KB is individually inconsistent.
  CHECK_THROWS_AS(revise(testsupport::problem2_kb_h(), f("G_1")), Error);
  CHECK_THROWS_AS(revise(kb_of({"p"}), f("q & !q")), Error);
}

TEST_CASE("update_pma selects per-model inclusion-minimal differences") {
  // Problem 1: J_1, J_5 and J_9 are selected, matching the displayed result.
  Formula eps = Formula::conjunction({f("A_0 -> E_1"), f("!E_0 & E_1 -> A_0")});
  KnowledgeBase updated = update_pma(testsupport::problem1_kb_h(), eps);
  CHECK(models_of(updated) ==
        std::set<std::vector<std::string>>{{"A_0", "E_1", "P_0"},
                                           {"E_0", "E_1", "P_0"},
                                           {"P_0"}});
  CHECK(model_equivalent(
      updated, kb_of({"(A_0 & E_1 & P_0 & !E_0) | (E_1 & E_0 & P_0 & !A_0) | "
                      "(P_0 & !E_1 & !A_0 & !E_0)"},
                     {"P_0", "E_0", "E_1", "A_0"})));

  // Example: updating the xor KB with a yields a.
  KnowledgeBase xor_kb = kb_of({"(a & !b) | (!a & b)"});
  CHECK(model_equivalent(update_pma(xor_kb, f("a")), kb_of({"a"}, {"a", "b"})));

  // Entailed inputs change nothing.
  KnowledgeBase stable = kb_of({"p & q"});
  CHECK(model_equivalent(update_pma(stable, f("p")), stable));

  CHECK_THROWS_AS(update_pma(testsupport::problem2_kb_h(), f("G_1")), Error);
}

TEST_CASE("diff is the symmetric difference over one signature") {
  Signature sig;
  for (const char* name : {"P_0", "E_0", "E_1", "A_0"}) sig.add(Atom{name});
  Model i2{sig, {Atom{"P_0"}, Atom{"E_1"}}};
  Model j1{sig, {Atom{"A_0"}, Atom{"E_1"}, Atom{"P_0"}}};
  Model j4{sig, {Atom{"A_0"}, Atom{"E_1"}, Atom{"E_0"}}};
  CHECK(diff(i2, j1) == std::set<Atom>{Atom{"A_0"}});
  CHECK(diff(i2, j4) == std::set<Atom>{Atom{"A_0"}, Atom{"E_0"}, Atom{"P_0"}});
  CHECK(diff(i2, i2).empty());

  Signature other;
  other.add(Atom{"x"});
  CHECK_THROWS_AS(diff(i2, Model{other, {}}), Error);
}

TEST_CASE("abduce finds positive hypothesis conjunctions") {
  AbductionProblem simple{kb_of({"p -> q"}, {"p", "q"}), f("q"), {Atom{"p"}}};
  auto result = abduce(simple);
  REQUIRE(result.size() == 1);
  CHECK(result.front() == Formula::atom("p"));

  // Problem 1: no causal rules connect the non-query atoms to the query.
  AbductionProblem p1{testsupport::problem1_kb_h(), f("A_0 & E_1"), {}};
  for (const auto& atom : p1.kb.signature().atoms()) p1.hypotheses.insert(atom);
  CHECK(abduce(p1).empty());

  // Problem 2: the knowledge base is inconsistent.
  AbductionProblem p2{testsupport::problem2_kb_h(), f("G_1"), {}};
  for (const auto& atom : p2.kb.signature().atoms()) p2.hypotheses.insert(atom);
  CHECK(abduce(p2).empty());
}

TEST_CASE("abduce results are subset-minimal") {
  AbductionProblem prob{kb_of({"p & r -> q"}, {"p", "q", "r"}), f("q"),
                        {Atom{"p"}, Atom{"r"}}};
  auto result = abduce(prob);
  REQUIRE(result.size() == 1);
  CHECK(result.front() == Formula::conjunction({Formula::atom("p"), Formula::atom("r")}));
  // Removing either conjunct breaks the entailment.
  KnowledgeBase with_p = expand(prob.kb, f("p"));
  CHECK_FALSE(entails_skeptical(with_p, f("q")));
  KnowledgeBase with_r = expand(prob.kb, f("r"));
  CHECK_FALSE(entails_skeptical(with_r, f("q")));
}

TEST_CASE("diagnose returns minimal faulty-component sets") {
  // Two components; assuming both healthy contradicts the observation, and
  // blaming c1 restores consistency.
  KnowledgeBase circuit = kb_of({"!abc1 -> x", "!abc2 -> y"}, {"x", "y", "abc1", "abc2"});
  DiagnosisProblem prob{circuit, {f("!x")}, {"c1", "c2"},
                        {{"c1", Atom{"abc1"}}, {"c2", Atom{"abc2"}}}};
  auto result = diagnose(prob);
  REQUIRE(result.size() == 1);
  CHECK(result.front() == std::set<std::string>{"c1"});

  // A healthy system yields only the empty diagnosis.
  DiagnosisProblem healthy{circuit, {f("x & y")}, {"c1", "c2"},
                           {{"c1", Atom{"abc1"}}, {"c2", Atom{"abc2"}}}};
  auto none_needed = diagnose(healthy);
  REQUIRE(none_needed.size() == 1);
  CHECK(none_needed.front().empty());

  // Both components must be blamed together.
  KnowledgeBase tandem = kb_of({"!abc1 -> x", "!abc2 -> x"}, {"x", "abc1", "abc2"});
  DiagnosisProblem both{tandem, {f("!x")}, {"c1", "c2"},
                        {{"c1", Atom{"abc1"}}, {"c2", Atom{"abc2"}}}};
  auto joint = diagnose(both);
  REQUIRE(joint.size() == 1);
  CHECK(joint.front() == std::set<std::string>{"c1", "c2"});
}

TEST_CASE("diagnoses only add assumptions, unlike explanations") {
  // The contrast witnessed by Problem 2: the reconciliation explanation has
  // to remove a human formula, while a diagnosis never touches the KB.
  auto explanation = find_explanation(testsupport::problem2_kb_a(),
                                      testsupport::problem2_kb_h(),
                                      f("!G_0 & G_1 -> A_0 | B_0"),
                                      EntailmentMode::Skeptical, GammaMinCard{});
  REQUIRE(explanation.has_value());
  CHECK_FALSE(explanation->gamma.empty());
  // diagnose's interface returns assumption sets only; there is no removal.
}

TEST_CASE("belief-change postlude properties on random inputs") {
  std::mt19937 rng(8086);
  const std::vector<std::string> atoms = {"a", "b", "c"};
  int exercised = 0;
  for (int round = 0; round < 80; ++round) {
    KnowledgeBase kb;
    for (const auto& name : atoms) kb.declare_atom(Atom{name});
    const int entries = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < entries; ++i) {
      kb.add("f" + std::to_string(i), testsupport::random_formula(rng, atoms, 2));
    }
    Formula phi = testsupport::random_formula(rng, atoms, 2);
    if (!is_consistent(kb)) continue;
    KnowledgeBase phi_kb = kb_of({}, atoms);
    phi_kb.add("phi", phi);
    if (!is_consistent(phi_kb)) continue;
    ++exercised;

    KnowledgeBase revised = revise(kb, phi);
    KnowledgeBase updated = update_pma(kb, phi);

    // Success: both operators entail the input.
    CHECK(entails_skeptical(revised, phi));
    CHECK(entails_skeptical(updated, phi));

    // Vacuity: consistent conjunction collapses revision to expansion.
    KnowledgeBase expanded = expand(kb, phi);
    if (is_consistent(expanded)) {
      CHECK(model_equivalent(revised, expanded));
    }

    // Idempotence.
    CHECK(model_equivalent(revise(revised, phi), revised));
    CHECK(model_equivalent(update_pma(updated, phi), updated));

    // With a single-model KB, update and revision coincide.
    if (enumerate_models(kb).size() == 1) {
      CHECK(model_equivalent(revised, updated));
    }
  }
  CHECK(exercised > 30);
}
