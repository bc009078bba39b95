#include <doctest.h>

#include <algorithm>

#include "cwm/generator.hpp"
#include "cwm/saturation.hpp"
#include "support/fixtures.hpp"
#include "support/model_search.hpp"

using namespace cwm;

namespace {

std::shared_ptr<const CompiledKB> compile_text(const std::string& text) {
  return CompiledKB::compile(normalize_kb(test::parse_or_throw(text)));
}

bool has_atom(const std::vector<std::string>& atoms, const std::string& needle) {
  return std::any_of(atoms.begin(), atoms.end(), [&](const std::string& a) {
    return a.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("seeding the prototype closes under the strict axioms") {
  auto kb = CompiledKB::compile(normalize_kb(test::emp_kb()));
  Saturation sat(kb, Saturation::Mode::instance);
  sat.seed_base();
  sat.seed_prototype(kb->class_id("Emp"));
  sat.run();
  CHECK(!sat.inconsistent());
  CHECK(sat.prototype_classes().test(kb->class_id("Adult")));
  // Adult <= exists has_SSN.Top introduces a witness edge.
  auto atoms = sat.derived_atoms();
  CHECK(has_atom(atoms, "triple(proto,has_SSN,"));
}

TEST_CASE("empty KB derives only the trivial facts") {
  auto kb = compile_text("individual a\n");
  Saturation sat(kb, Saturation::Mode::instance);
  sat.seed_base();
  sat.run();
  CHECK(sat.derived_atoms() == std::vector<std::string>{"inst(a,Top)"});
}

TEST_CASE("bottom seed makes the saturation inconsistent") {
  auto kb = compile_text("concept A\nA <= Bot\n");
  Saturation sat(kb, Saturation::Mode::instance);
  sat.seed_base();
  sat.seed_prototype(kb->class_id("A"));
  sat.run();
  CHECK(sat.inconsistent());
}

TEST_CASE("strict subsumption on the employees KB") {
  auto kb = CompiledKB::compile(normalize_kb(test::emp_kb()));
  StrictClassifier cls(kb);
  CHECK(cls.subsumes(kb->class_id("PhdStudent"), kb->class_id("Student")));
  CHECK(!cls.subsumes(kb->class_id("Student"), kb->class_id("PhdStudent")));
  CHECK(!cls.subsumes(kb->class_id("Emp"), kb->class_id("Student")));
  // Reflexivity for every class name.
  for (ClassId c = 0; c < kb->class_count(); ++c) CHECK(cls.subsumes(c, c));
}

TEST_CASE("subsumption chain through an existential") {
  // Emp <= Adult <= exists has_SSN.Top, via the query-style defined name.
  NormalizedQuery nq =
      normalize_query(normalize_kb(test::emp_kb()),
                      test::query_or_throw("Emp <= exists has_SSN.Top"));
  auto kb = CompiledKB::compile(nq.kb);
  StrictClassifier cls(kb);
  CHECK(cls.subsumes(kb->class_id(nq.subject), kb->class_id(nq.object)));

  // Same chain on a KB small enough for the model search to confirm.
  NormalizedQuery small = normalize_query(
      normalize_kb(test::parse_or_throw("concept Emp Adult\nrole has_SSN\n"
                                        "Emp <= Adult\n"
                                        "Adult <= exists has_SSN.Top\n")),
      test::query_or_throw("Emp <= exists has_SSN.Top"));
  auto skb = CompiledKB::compile(small.kb);
  StrictClassifier scls(skb);
  CHECK(scls.subsumes(skb->class_id(small.subject),
                      skb->class_id(small.object)));
  test::ModelSpace space(skb->source());
  CHECK(test::search_entails_subsumption(space, 3, small.subject,
                                         small.object));
}

TEST_CASE("specificity relation") {
  SUBCASE("extending the employees KB with distinguished PhdStudent") {
    std::string text = std::string(test::emp_kb_text()) +
                       "T(PhdStudent) <= exists hasScholarship.Top @ 40\n";
    auto kb = compile_text(text);
    StrictClassifier cls(kb);
    SpecificityRelation spec = compute_specificity(cls);
    // Distinguished order: Emp, Student, PhdStudent.
    REQUIRE(spec.size() == 3);
    CHECK(spec.more_specific(2, 1));   // PhdStudent over Student
    CHECK(!spec.more_specific(1, 2));
    CHECK(!spec.more_specific(0, 1));  // Emp and Student unrelated
    CHECK(!spec.more_specific(1, 0));
    for (std::size_t i = 0; i < 3; ++i) CHECK(!spec.more_specific(i, i));
  }
  SUBCASE("equivalent concepts are not more specific than each other") {
    auto kb = compile_text(
        "concept A B X\nA <= B\nB <= A\nT(A) <= X @ 1\nT(B) <= X @ 1\n");
    StrictClassifier cls(kb);
    SpecificityRelation spec = compute_specificity(cls);
    CHECK(!spec.more_specific(0, 1));
    CHECK(!spec.more_specific(1, 0));
  }
}

TEST_CASE("consistency checks") {
  CHECK(is_consistent(CompiledKB::compile(normalize_kb(test::emp_kb()))));
  CHECK(!is_consistent(
      compile_text("concept A\nindividual a\nA <= Bot\nA(a)\n")));
  // Unsatisfiable concept, consistent KB: no instance exists.
  CHECK(is_consistent(compile_text("concept A\nA <= Bot\n")));
}

TEST_CASE("monotonicity in the seed") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    KnowledgeBase raw = gen_random_kb(seed);
    auto kb = CompiledKB::compile(normalize_kb(raw));
    if (kb->class_count() < 3) continue;
    Saturation small(kb, Saturation::Mode::instance);
    small.seed_base();
    small.seed_prototype(1);
    small.run();
    Saturation big(kb, Saturation::Mode::instance);
    big.seed_base();
    big.seed_prototype(1);
    big.seed_prototype(2);
    big.run();
    auto a = small.derived_atoms();
    auto b = big.derived_atoms();
    CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST_CASE("fixpoint is confluent across agenda orders") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto kb = CompiledKB::compile(normalize_kb(gen_random_kb(seed)));
    Saturation ref(kb, Saturation::Mode::instance);
    ref.seed_base();
    if (kb->class_count() > 1) ref.seed_prototype(1);
    ref.run();
    auto expected = ref.derived_atoms();
    for (std::uint64_t agenda = 0; agenda < 5; ++agenda) {
      Saturation sat(kb, Saturation::Mode::instance);
      sat.seed_base();
      if (kb->class_count() > 1) sat.seed_prototype(1);
      sat.run_shuffled(agenda);
      CHECK(sat.derived_atoms() == expected);
      CHECK(sat.inconsistent() == ref.inconsistent());
    }
  }
}

TEST_CASE("derived instance facts are sound against the model search") {
  GenLimits caps;
  caps.max_classes = 3;
  caps.max_roles = 1;
  caps.max_individuals = 1;
  caps.max_strict = 4;
  caps.max_defeasible = 0;
  caps.nominal_percent = 0;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 150 && checked < 60; ++seed) {
    KnowledgeBase raw = gen_random_kb(seed * 31 + 1, caps);
    if (raw.signature.individuals.empty() || raw.abox.empty()) continue;
    auto nkb = normalize_kb(raw);
    auto kb = CompiledKB::compile(nkb);
    Saturation sat(kb, Saturation::Mode::instance);
    sat.seed_base();
    sat.run();
    test::ModelSpace space(nkb);
    if (sat.inconsistent()) {
      CHECK(!test::search_has_model(space, 3));
      continue;
    }
    // Check every derived inst(a, C) for ABox individuals semantically, and
    // completeness on these nominal-free KBs as well.
    auto atoms = sat.derived_atoms();
    for (IndividualId i = 0; i < kb->individual_count(); ++i) {
      const std::string& ind = kb->individual_name(i);
      for (ClassId c = 1; c < kb->class_count(); ++c) {
        bool derived = std::binary_search(
            atoms.begin(), atoms.end(),
            "inst(" + ind + "," + kb->class_name(c) + ")");
        bool entailed = test::search_entails_instance(space, 3, ind,
                                                      kb->class_name(c));
        CHECK(derived == entailed);
        ++checked;
      }
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("nominal rules against the model search") {
  // Terms classified into {a} share a's classes and edges.
  auto kb = compile_text(
      "concept A B\nrole r\nindividual bob\n"
      "A <= {bob}\nB(bob)\n");
  Saturation sat(kb, Saturation::Mode::instance);
  sat.seed_base();
  sat.seed_prototype(kb->class_id("A"));
  sat.run();
  // proto is in {bob}, so it inherits B.
  CHECK(sat.prototype_classes().test(kb->class_id("B")));

  // Soundness of derived subsumptions on small nominal KBs.
  GenLimits caps;
  caps.max_classes = 2;
  caps.max_roles = 1;
  caps.max_individuals = 2;
  caps.max_strict = 3;
  caps.max_defeasible = 0;
  caps.nominal_percent = 100;
  int subsumption_checks = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    KnowledgeBase raw = gen_random_kb(seed * 97 + 5, caps);
    bool has_nominal = false;
    for (const auto& ax : raw.strict) {
      if (ax.lhs.kind() == ConceptExpr::Kind::nominal ||
          ax.rhs.kind() == ConceptExpr::Kind::nominal)
        has_nominal = true;
    }
    if (!has_nominal) continue;
    auto nkb = normalize_kb(raw);
    auto ckb = CompiledKB::compile(nkb);
    StrictClassifier cls(ckb);
    test::ModelSpace space(nkb);
    for (ClassId a = 1; a < ckb->class_count(); ++a)
      for (ClassId b = 1; b < ckb->class_count(); ++b) {
        if (a == b) continue;
        if (cls.subsumes(a, b)) {
          CHECK(test::search_entails_subsumption(space, 2, ckb->class_name(a),
                                                 ckb->class_name(b)));
          ++subsumption_checks;
        }
      }
  }
  CHECK(subsumption_checks > 0);
}

TEST_CASE("probe coherence: subsumption equals the fresh-individual test") {
  // strict_subsumes(A,B) must agree with asserting a fresh individual into A
  // and reading off B (or inconsistency).
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    KnowledgeBase raw = gen_random_kb(seed);
    raw.signature.individuals.insert("probe_ind");
    auto base_ckb = CompiledKB::compile(normalize_kb(raw));
    StrictClassifier cls(base_ckb);
    for (ClassId a = 1; a < base_ckb->class_count() && a < 4; ++a)
      for (ClassId b = 1; b < base_ckb->class_count() && b < 4; ++b) {
        KnowledgeBase probed = raw;
        probed.abox.push_back(ConceptAssertion{
            ConceptExpr::atomic(base_ckb->class_name(a)), "probe_ind", {}});
        auto pkb = CompiledKB::compile(normalize_kb(probed));
        Saturation sat(pkb, Saturation::Mode::instance);
        sat.seed_base();
        sat.run();
        bool via_probe =
            sat.inconsistent() ||
            has_atom(sat.derived_atoms(),
                     "inst(probe_ind," + base_ckb->class_name(b) + ")");
        CHECK(via_probe == cls.subsumes(a, b));
      }
  }
}
