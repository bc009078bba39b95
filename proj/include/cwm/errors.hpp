#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cwm {

// Base class for everything the reasoner can throw. Parse problems are not
// exceptions; they come back as Diagnostic values from the parser.
class ReasonerError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Checked integer arithmetic on weights overflowed.
class OverflowError : public ReasonerError {
public:
  using ReasonerError::ReasonerError;
};

// The candidate enumeration exceeded its configured budget.
class BudgetError : public ReasonerError {
public:
  BudgetError(std::uint64_t budget, std::uint64_t explored)
      : ReasonerError("candidate-space budget exceeded: explored " +
                      std::to_string(explored) + " of at most " +
                      std::to_string(budget) + " saturations"),
        budget(budget),
        explored(explored) {}
  std::uint64_t budget;
  std::uint64_t explored;
};

// Input too large for the brute-force oracle.
class OracleCapError : public ReasonerError {
public:
  using ReasonerError::ReasonerError;
};

// The preference relation turned out to be cyclic. This signals a bug in the
// specificity or dominance definitions, not bad user input.
class PreferenceCycleError : public ReasonerError {
public:
  using ReasonerError::ReasonerError;
};

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r))
    throw OverflowError("integer overflow while summing weights " +
                        std::to_string(a) + " + " + std::to_string(b));
  return r;
}

}  // namespace cwm
