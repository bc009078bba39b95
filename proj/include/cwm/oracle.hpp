#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cwm/entailment.hpp"
#include "cwm/model.hpp"

namespace cwm {

// Verification oracle: a from-scratch re-implementation of the decision
// procedure sharing no code with the engine. Naive subset enumeration, naive
// fixpoint by repeated full rule sweeps, the weight and preference
// definitions transcribed literally, minima by pairwise scan. Only suitable
// for small inputs.
struct OracleType {
  std::set<std::string> concepts;
  // nullopt encodes minus infinity.
  std::map<std::string, std::optional<std::int64_t>> weights;
};

struct OracleVerdict {
  bool entailed = false;
  bool vacuous = false;
  std::vector<OracleType> preferred;
  std::size_t candidate_count = 0;
};

// Throws OracleCapError when the normalized KB has more class names than
// max_classes (the subset space doubles per class).
OracleVerdict oracle_decide(const KnowledgeBase& kb, const Query& q,
                            std::size_t max_classes = 12);

// Canonical form for engine/oracle agreement checks.
struct ComparableVerdict {
  bool entailed = false;
  bool vacuous = false;
  std::size_t candidate_count = 0;
  std::set<std::string> preferred_keys;

  friend bool operator==(const ComparableVerdict&,
                         const ComparableVerdict&) = default;
  std::string to_string() const;
};

ComparableVerdict comparable(const OracleVerdict& v);
ComparableVerdict comparable(const EntailmentVerdict& v);

}  // namespace cwm
