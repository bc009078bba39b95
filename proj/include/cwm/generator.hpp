#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "cwm/model.hpp"

namespace cwm {

// Size caps for generated knowledge bases. Defaults match the fuzzing
// corpus the oracle-equivalence suite runs on; the fresh names introduced by
// normalization stay within the oracle's class cap by construction.
struct GenLimits {
  int max_classes = 5;
  int max_roles = 2;
  int max_individuals = 2;
  int max_strict = 4;
  int max_defeasible = 6;
  std::int64_t weight_min = -100;
  std::int64_t weight_max = 100;
  // Percent of KBs that get a strict subsumption chain between distinguished
  // concepts, to exercise specificity.
  int spec_chain_percent = 20;
  // Percent chance of nominal-flavored strict axioms (needs individuals).
  int nominal_percent = 10;
  // Hard ceiling on declared classes + fresh names normalization will add.
  int max_total_classes = 11;
};

// Deterministic: the same seed always yields the same KB, on any platform.
// Every generated KB passes validate_kb.
KnowledgeBase gen_random_kb(std::uint64_t seed, const GenLimits& limits = {});

// A random typicality query over the KB's signature; mostly atomic subject
// and object, occasionally compound to exercise query normalization.
Query gen_random_query(std::uint64_t seed, const KnowledgeBase& kb,
                       bool allow_compound = false);

// Greedy shrinking for fuzz reproducers: repeatedly drops strict axioms,
// typicality inclusions and assertions while still_failing stays true on the
// smaller KB. Deterministic.
KnowledgeBase shrink_kb(
    KnowledgeBase kb,
    const std::function<bool(const KnowledgeBase&)>& still_failing);

}  // namespace cwm
