#include <doctest.h>

#include "cwm/generator.hpp"
#include "cwm/normalize.hpp"

using namespace cwm;

TEST_CASE("generation is deterministic per seed") {
  for (std::uint64_t seed : {0ull, 1ull, 42ull, 999ull}) {
    CHECK(gen_random_kb(seed) == gen_random_kb(seed));
    KnowledgeBase kb = gen_random_kb(seed);
    CHECK(gen_random_query(seed, kb) == gen_random_query(seed, kb));
  }
  CHECK(!(gen_random_kb(1) == gen_random_kb(2)));
}

TEST_CASE("generated KBs always validate") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    KnowledgeBase kb = gen_random_kb(seed);
    CHECK(validate_kb(kb).empty());
    // Stays inside the oracle's class budget after normalization.
    CHECK(normalize_kb(kb).class_names.size() <= 11);
  }
}

TEST_CASE("degenerate caps give a minimal valid KB") {
  GenLimits caps;
  caps.max_classes = 1;
  caps.max_roles = 0;
  caps.max_individuals = 0;
  caps.max_strict = 0;
  caps.max_defeasible = 0;
  KnowledgeBase kb = gen_random_kb(7, caps);
  CHECK(validate_kb(kb).empty());
  CHECK(kb.signature.concepts.size() == 1);
  CHECK(kb.strict.empty());
  CHECK(kb.defeasible.empty());
  CHECK(kb.abox.empty());
}

TEST_CASE("shrink_kb keeps the failure and reaches a local minimum") {
  KnowledgeBase kb = gen_random_kb(12345);
  REQUIRE(kb.strict.size() + kb.defeasible.size() + kb.abox.size() >= 3);
  // Rigged failure: "the KB still contains a typicality inclusion".
  auto failing = [](const KnowledgeBase& k) { return !k.defeasible.empty(); };
  KnowledgeBase shrunk = shrink_kb(kb, failing);
  CHECK(failing(shrunk));
  CHECK(shrunk.strict.empty());
  CHECK(shrunk.abox.empty());
  CHECK(shrunk.defeasible.size() == 1);
  CHECK(shrunk.distinguished.size() == 1);
  CHECK(validate_kb(shrunk).empty());
}

TEST_CASE("a fraction of KBs carries a specificity chain") {
  int with_chain = 0, eligible = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    KnowledgeBase kb = gen_random_kb(seed);
    if (kb.distinguished.size() < 2) continue;
    ++eligible;
    for (const auto& ax : kb.strict)
      if (ax.lhs.is_atomic() && ax.rhs.is_atomic() &&
          ax.lhs.name() == kb.distinguished[0]) {
        ++with_chain;
        break;
      }
  }
  CHECK(eligible > 50);
  CHECK(with_chain > 0);
}
