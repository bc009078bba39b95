#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

#include "cwm/saturation.hpp"

namespace cwm {

// An integer weight extended with minus infinity at the bottom.
class ExtendedWeight {
public:
  constexpr ExtendedWeight() = default;  // minus infinity

  static constexpr ExtendedWeight neg_infinity() { return ExtendedWeight(); }
  static constexpr ExtendedWeight finite(std::int64_t v) {
    ExtendedWeight w;
    w.finite_ = true;
    w.value_ = v;
    return w;
  }

  bool is_finite() const { return finite_; }
  std::int64_t value() const { return value_; }  // finite only

  // Minus infinity below every finite value; finite values compare as
  // integers. value_ is canonically 0 when infinite, so defaulting works.
  friend constexpr auto operator<=>(const ExtendedWeight&,
                                    const ExtendedWeight&) = default;

  std::string to_string() const {
    return finite_ ? std::to_string(value_) : std::string("-inf");
  }

private:
  bool finite_ = false;
  std::int64_t value_ = 0;
};

// One entry per distinguished concept, in KB order.
using WeightVector = std::vector<ExtendedWeight>;

// A saturated, consistent set of classes for the prototype element, with its
// weight per distinguished concept.
struct CandidateType {
  ClassSet concepts;
  WeightVector weights;

  friend bool operator==(const CandidateType&, const CandidateType&) = default;
};

// The weight of a type with respect to distinguished concept dist_index: the
// checked sum of the weights of the inclusion heads the type satisfies, or
// minus infinity when the type is not an instance of the concept at all.
ExtendedWeight weight_of(const ClassSet& concepts, std::size_t dist_index,
                         const CompiledKB& kb);

WeightVector weight_vector_of(const ClassSet& concepts, const CompiledKB& kb);

// Concept-wise preference: x is preferred to y iff x's weight is strictly
// higher.
inline bool prefers_cw(ExtendedWeight wx, ExtendedWeight wy) {
  return wx > wy;
}

// Specificity-aware Pareto preference: x is globally preferred to y iff
//   (i)  x is strictly preferred for some distinguished concept, and
//   (ii) for every concept j where y beats x, some strictly more specific
//        concept h has x beating y.
bool prefers_global(const WeightVector& x, const WeightVector& y,
                    const SpecificityRelation& spec);
bool prefers_global(const CandidateType& x, const CandidateType& y,
                    const SpecificityRelation& spec);

// The candidates no other candidate globally dominates, in canonical order.
// Verifies acyclicity of the dominance relation on the given set first and
// throws PreferenceCycleError on a violation (which would mean the strict
// partial order claim is broken, not that the input is bad).
std::vector<CandidateType> minimal_candidates(
    const std::vector<CandidateType>& candidates,
    const SpecificityRelation& spec);

// Minima of the concept-wise preference for one distinguished concept.
std::vector<CandidateType> minimal_by_concept(
    const std::vector<CandidateType>& candidates, std::size_t dist_index);

namespace detail {
// Shared minima-with-cycle-check core, parameterized over the dominance
// relation so tests can exercise the cycle detector with a rigged relation.
std::vector<CandidateType> minimal_under(
    const std::vector<CandidateType>& candidates,
    const std::function<bool(const WeightVector&, const WeightVector&)>&
        dominates);
}  // namespace detail

}  // namespace cwm
