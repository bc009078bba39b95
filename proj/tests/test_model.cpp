#include <doctest.h>

#include "cwm/model.hpp"
#include "support/fixtures.hpp"

using namespace cwm;

TEST_CASE("concept expressions compare structurally") {
  ConceptExpr a = ConceptExpr::atomic("A");
  ConceptExpr b = ConceptExpr::atomic("B");
  CHECK(a == ConceptExpr::atomic("A"));
  CHECK(a != b);
  CHECK(ConceptExpr::top() == ConceptExpr::top());
  CHECK(ConceptExpr::top() != ConceptExpr::bot());
  // Ordered conjunction: no implicit commutativity at the syntax level.
  CHECK(ConceptExpr::conj(a, b) != ConceptExpr::conj(b, a));
  CHECK(ConceptExpr::conj(a, b) == ConceptExpr::conj(a, b));
  CHECK(ConceptExpr::exists("r", a) != ConceptExpr::exists("s", a));
  CHECK(ConceptExpr::nominal("x") == ConceptExpr::nominal("x"));

  // Equivalence relation sanity: reflexive, symmetric, transitive on a few
  // shared-subtree values.
  ConceptExpr c1 = ConceptExpr::conj(a, ConceptExpr::exists("r", b));
  ConceptExpr c2 = ConceptExpr::conj(a, ConceptExpr::exists("r", b));
  ConceptExpr c3 = c1;
  CHECK(c1 == c1);
  CHECK((c1 == c2) == (c2 == c1));
  CHECK((c1 == c2 && c2 == c3) ? c1 == c3 : true);
}

TEST_CASE("validate_kb accepts the employees KB") {
  KnowledgeBase kb = test::emp_kb();
  CHECK(validate_kb(kb).empty());
  // Idempotent and side-effect free.
  CHECK(validate_kb(kb).empty());
  CHECK(kb == test::emp_kb());
}

TEST_CASE("validate_kb flags a defeasible subject outside the distinguished set") {
  KnowledgeBase kb = test::emp_kb();
  kb.signature.concepts.insert("Dog");
  kb.defeasible.push_back(
      {"Dog", ConceptExpr::atomic("Young"), 5, {}});
  // distinguished left stale on purpose
  auto diags = validate_kb(kb);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("Dog") != std::string::npos);
}

TEST_CASE("validate_kb flags undeclared names") {
  KnowledgeBase kb = test::emp_kb();
  kb.strict.push_back({ConceptExpr::atomic("Emp"),
                       ConceptExpr::exists("owns", ConceptExpr::top()),
                       {}});
  auto diags = validate_kb(kb);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].message.find("owns") != std::string::npos);
}

TEST_CASE("signature_of lists occurring and declared names, sorted") {
  SUBCASE("employees KB") {
    auto sig = signature_of(test::emp_kb());
    CHECK(sig.concepts == std::vector<std::string>{"Adult", "Emp",
                                                   "PhdStudent", "Student",
                                                   "Young"});
    CHECK(sig.roles == std::vector<std::string>{"hasScholarship", "has_SSN",
                                                "has_boss", "has_classes"});
    CHECK(sig.individuals.empty());
  }
  SUBCASE("empty KB") {
    auto sig = signature_of(KnowledgeBase{});
    CHECK(sig.concepts.empty());
    CHECK(sig.roles.empty());
    CHECK(sig.individuals.empty());
  }
  SUBCASE("undeclared names still show up") {
    KnowledgeBase kb;
    kb.abox.push_back(RoleAssertion{"r", "a", "b", {}});
    auto sig = signature_of(kb);
    CHECK(sig.concepts.empty());
    CHECK(sig.roles == std::vector<std::string>{"r"});
    CHECK(sig.individuals == std::vector<std::string>{"a", "b"});
  }
}
