#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cwm/model.hpp"
#include "cwm/preference.hpp"

namespace cwm {

struct DecideOptions {
  // Upper bound on the number of candidate saturations materialized while
  // walking the subset space. Exceeding it raises BudgetError rather than
  // ever returning a wrong answer.
  std::uint64_t candidate_budget = 1'000'000;
  // Normalization decomposition order; the verdict must not depend on it.
  DecompOrder decomp_order = DecompOrder::left_first;
};

struct EntailmentVerdict {
  bool entailed = false;
  // No consistent candidate type contains the query subject; the query then
  // holds vacuously.
  bool vacuous = false;
  std::vector<CandidateType> preferred;  // canonical order
  std::size_t candidate_count = 0;
  std::chrono::microseconds elapsed{0};

  // Context for rendering the preferred types.
  std::shared_ptr<const CompiledKB> kb;
  std::string subject_name;
  std::string object_name;
  Query query;
};

// All saturated consistent class sets for the prototype seeded with the
// subject (deduplicated closures, canonical order). The walk shares
// saturation prefixes and prunes inconsistent subtrees; the result does not
// depend on the walk order.
std::vector<CandidateType> enumerate_candidates(
    const std::shared_ptr<const CompiledKB>& kb, ClassId subject,
    std::uint64_t budget = DecideOptions{}.candidate_budget);

// Decides the query against the KB. Typicality queries enumerate candidate
// types for the subject and keep the preference minima: the concept-wise
// minima when the subject is itself a distinguished concept, the
// global-preference minima otherwise. Strict queries bypass candidates and
// use the subsumption saturation.
EntailmentVerdict decide_entailment(const KnowledgeBase& kb, const Query& q,
                                    const DecideOptions& opts = {});

// Human-readable report: per preferred type, the satisfied and violated
// typicality inclusions, the weight vector, and whether the query object
// holds. Fresh names are rendered as the expressions they stand for.
std::string explain(const EntailmentVerdict& verdict);

}  // namespace cwm
