#include <doctest.h>

#include "cwm/entailment.hpp"
#include "cwm/errors.hpp"
#include "cwm/generator.hpp"
#include "cwm/json_io.hpp"
#include "cwm/oracle.hpp"
#include "support/fixtures.hpp"

#include <json.hpp>

using namespace cwm;

namespace {

EntailmentVerdict decide(const KnowledgeBase& kb, const std::string& query) {
  return decide_entailment(kb, test::query_or_throw(query));
}

}  // namespace

TEST_CASE("candidate enumeration shapes") {
  SUBCASE("one class, no axioms: a single candidate {Top, C}") {
    auto kb = CompiledKB::compile(
        normalize_kb(test::parse_or_throw("concept C\n")));
    auto cands = enumerate_candidates(kb, kb->class_id("C"));
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].concepts.count() == 2);
    CHECK(cands[0].concepts.test(kTop));
    CHECK(cands[0].concepts.test(kb->class_id("C")));
  }
  SUBCASE("strict closure holds in every candidate") {
    auto kb = CompiledKB::compile(normalize_kb(test::emp_kb()));
    auto cands = enumerate_candidates(kb, kb->class_id("Emp"));
    CHECK(cands.size() == 48);
    for (const auto& t : cands) CHECK(t.concepts.test(kb->class_id("Adult")));
  }
  SUBCASE("unsatisfiable subject yields no candidates") {
    auto kb = CompiledKB::compile(normalize_kb(
        test::parse_or_throw("concept Emp\nEmp <= Bot\n")));
    CHECK(enumerate_candidates(kb, kb->class_id("Emp")).empty());
  }
}

TEST_CASE("worked-example verdicts") {
  KnowledgeBase kb = test::emp_kb();

  EntailmentVerdict boss = decide(kb, "T(Emp) <= exists has_boss.Emp");
  CHECK(boss.entailed);
  CHECK(!boss.vacuous);
  CHECK(boss.candidate_count == 48);
  CHECK(boss.preferred.size() == 6);

  EntailmentVerdict young = decide(kb, "T(Emp) <= Young");
  CHECK(!young.entailed);
  CHECK(young.candidate_count == 48);

  EntailmentVerdict st_young = decide(kb, "T(Student) <= Young");
  CHECK(st_young.entailed);
  // Free choices: boss-head, scholarship-head, {}/{Emp}/{Emp,Adult}... the
  // closure count is 96 with 12 preference-maximal student types.
  CHECK(st_young.candidate_count == 96);
  CHECK(st_young.preferred.size() == 12);

  EntailmentVerdict st_sch =
      decide(kb, "T(Student) <= exists hasScholarship.Top");
  CHECK(!st_sch.entailed);

  // Every preferred employee type carries the +100 inclusion and skips the
  // penalized ones.
  auto ckb = boss.kb;
  for (const auto& t : boss.preferred) {
    CHECK(t.weights[0] == ExtendedWeight::finite(100));
    CHECK(!t.concepts.test(ckb->class_id("Young")));
  }
}

TEST_CASE("reflexivity holds for every declared concept") {
  KnowledgeBase kb = test::emp_kb();
  for (const auto& name : {"Emp", "Student", "Young", "Adult", "PhdStudent"}) {
    EntailmentVerdict v = decide(kb, std::string("T(") + name +
                                         ") <= " + name);
    CHECK(v.entailed);
  }
}

TEST_CASE("vacuous subject entails everything") {
  KnowledgeBase kb =
      test::parse_or_throw("concept C D\nC <= Bot\nT(C) <= D @ 5\n");
  EntailmentVerdict v = decide(kb, "T(C) <= D");
  CHECK(v.entailed);
  CHECK(v.vacuous);
  CHECK(v.preferred.empty());
  EntailmentVerdict v2 = decide(kb, "T(D) <= C");
  CHECK(!v2.entailed);
  CHECK(!v2.vacuous);
}

TEST_CASE("strict queries bypass candidates") {
  KnowledgeBase kb = test::emp_kb();
  EntailmentVerdict v = decide(kb, "PhdStudent <= Student");
  CHECK(v.entailed);
  CHECK(v.candidate_count == 0);
  CHECK(!decide(kb, "Student <= PhdStudent").entailed);
  CHECK(decide(kb, "Emp <= exists has_SSN.Top").entailed);
}

TEST_CASE("compound subject uses the global preference") {
  KnowledgeBase kb = test::emp_kb();
  EntailmentVerdict v = decide(kb, "T(Emp and Student) <= Emp");
  CHECK(v.entailed);
  // Both constituents hold in every candidate by construction.
  EntailmentVerdict v2 = decide(kb, "T(Emp and Student) <= Student");
  CHECK(v2.entailed);
}

TEST_CASE("unknown query names are an error") {
  KnowledgeBase kb = test::emp_kb();
  CHECK_THROWS_AS(decide(kb, "T(Martian) <= Young"), ReasonerError);
  CHECK_THROWS_AS(decide(kb, "T(Emp) <= exists flies.Top"), ReasonerError);
}

TEST_CASE("budget errors report the bound and never lie") {
  KnowledgeBase kb = test::emp_kb();
  DecideOptions opts;
  opts.candidate_budget = 10;
  CHECK_THROWS_AS(
      decide_entailment(kb, test::query_or_throw("T(Emp) <= Young"), opts),
      BudgetError);
}

TEST_CASE("verdicts are deterministic across repeated runs") {
  KnowledgeBase kb = test::emp_kb();
  EntailmentVerdict a = decide(kb, "T(Emp) <= Young");
  EntailmentVerdict b = decide(kb, "T(Emp) <= Young");
  REQUIRE(a.preferred.size() == b.preferred.size());
  for (std::size_t i = 0; i < a.preferred.size(); ++i)
    CHECK(a.preferred[i] == b.preferred[i]);
  CHECK(verdict_to_json(a, false) == verdict_to_json(b, false));
}

TEST_CASE("oracle on the worked example agrees with the engine") {
  KnowledgeBase kb = test::emp_kb();
  for (const char* q :
       {"T(Emp) <= exists has_boss.Emp", "T(Emp) <= Young",
        "T(Student) <= Young", "T(Student) <= exists hasScholarship.Top",
        "T(Emp) <= Emp", "T(Adult) <= exists has_SSN.Top",
        "PhdStudent <= Student"}) {
    Query query = test::query_or_throw(q);
    CAPTURE(q);
    CHECK(comparable(oracle_decide(kb, query)) ==
          comparable(decide_entailment(kb, query)));
  }
}

TEST_CASE("oracle edge cases") {
  SUBCASE("reflexivity on a bare concept") {
    KnowledgeBase kb = test::parse_or_throw("concept C\n");
    OracleVerdict v = oracle_decide(kb, test::query_or_throw("T(C) <= C"));
    CHECK(v.entailed);
    CHECK(!v.vacuous);
  }
  SUBCASE("unsatisfiable subject is vacuous") {
    KnowledgeBase kb =
        test::parse_or_throw("concept C D\nC <= Bot\n");
    OracleVerdict v = oracle_decide(kb, test::query_or_throw("T(C) <= D"));
    CHECK(v.entailed);
    CHECK(v.vacuous);
  }
  SUBCASE("cap is enforced") {
    KnowledgeBase kb = test::emp_kb();
    CHECK_THROWS_AS(
        oracle_decide(kb, test::query_or_throw("T(Emp) <= Young"), 4),
        OracleCapError);
  }
}

TEST_CASE("random agreement between engine and oracle") {
  int disagreements = 0;
  for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
    KnowledgeBase kb = gen_random_kb(seed);
    Query q = gen_random_query(seed * 7 + 1, kb);
    ComparableVerdict engine = comparable(decide_entailment(kb, q));
    ComparableVerdict oracle = comparable(oracle_decide(kb, q));
    if (!(engine == oracle)) {
      ++disagreements;
      CAPTURE(seed);
      CHECK(engine == oracle);
    }
  }
  CHECK(disagreements == 0);
}

TEST_CASE("raising a lone inclusion's weight never un-entails it") {
  int flips = 0;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    GenLimits caps;
    caps.max_defeasible = 3;
    KnowledgeBase kb = gen_random_kb(seed, caps);
    if (kb.distinguished.size() != 1) continue;
    const std::string subject = kb.distinguished[0];
    // Query the first inclusion of the single distinguished concept.
    const WeightedInclusion* first = kb.defeasible_for(subject)[0];
    Query q{ConceptExpr::atomic(subject), first->head, true};
    bool before = decide_entailment(kb, q).entailed;
    if (!before) continue;
    KnowledgeBase raised = kb;
    for (auto& d : raised.defeasible)
      if (d.subject == first->subject && d.head == first->head &&
          d.weight == first->weight) {
        d.weight += 37;
        break;
      }
    if (!decide_entailment(raised, q).entailed) ++flips;
  }
  CHECK(flips == 0);
}

TEST_CASE("explanation report") {
  KnowledgeBase kb = test::emp_kb();
  EntailmentVerdict v = decide(kb, "T(Emp) <= Young");
  std::string report = explain(v);
  CHECK(report.find("not entailed") != std::string::npos);
  // Every preferred type satisfies the boss inclusion and violates the
  // young and classes ones.
  CHECK(report.find("satisfied  T(Emp) <= exists has_boss.Emp @ 100") !=
        std::string::npos);
  CHECK(report.find("violated   T(Emp) <= Young @ -50") != std::string::npos);
  CHECK(report.find("violated   T(Emp) <= exists has_classes.Top @ -70") !=
        std::string::npos);

  EntailmentVerdict vac =
      decide(test::parse_or_throw("concept C D\nC <= Bot\n"), "T(C) <= D");
  CHECK(explain(vac).find("unsatisfiable") != std::string::npos);

  // A type that cannot contain a distinguished concept reports vacuous
  // satisfaction and a -inf weight for it.
  KnowledgeBase disjoint = test::parse_or_throw(
      "concept C D X\nC and D <= Bot\nT(D) <= X @ 5\n");
  EntailmentVerdict off = decide(disjoint, "T(C) <= C");
  std::string r2 = explain(off);
  CHECK(r2.find("weight -inf") != std::string::npos);
  CHECK(r2.find("hold vacuously") != std::string::npos);
}

TEST_CASE("result JSON follows the schema") {
  KnowledgeBase kb = test::emp_kb();
  EntailmentVerdict v = decide(kb, "T(Emp) <= Young");
  auto doc = nlohmann::json::parse(verdict_to_json(v, true));
  CHECK(doc["schema"] == 1);
  CHECK(doc["query"] == "T(Emp) <= Young");
  CHECK(doc["entailed"] == false);
  CHECK(doc["vacuous"] == false);
  CHECK(doc["stats"]["candidates"] == 48);
  CHECK(doc["stats"]["preferred"] == 6);
  REQUIRE(doc["preferred_types"].is_array());
  REQUIRE(doc["preferred_types"].size() == 6);
  for (const auto& t : doc["preferred_types"]) {
    CHECK(t["concepts"].is_array());
    CHECK(t["weights"]["Emp"] == 100);
    // Students stay optional in preferred employee types; weights are either
    // integers or the string "-inf".
    const auto& sw = t["weights"]["Student"];
    CHECK((sw.is_number_integer() || sw == "-inf"));
  }
}
