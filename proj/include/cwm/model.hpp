#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace cwm {

// Position of a parsed statement, 1-based. Hand-built knowledge bases have no
// spans; diagnostics then omit the location.
struct SourceSpan {
  int line = 0;
  int column = 0;
  bool known() const { return line > 0; }
};

// An EL-bottom concept expression: Top | Bot | name | {individual} |
// C and C | exists role.C. Immutable tree with shared subterms; copying is
// cheap and thread-safe.
class ConceptExpr {
public:
  enum class Kind { top, bot, atomic, nominal, conj, exists };

  ConceptExpr();  // defaults to Top

  static ConceptExpr top();
  static ConceptExpr bot();
  static ConceptExpr atomic(std::string name);
  static ConceptExpr nominal(std::string individual);
  static ConceptExpr conj(ConceptExpr left, ConceptExpr right);
  static ConceptExpr exists(std::string role, ConceptExpr filler);

  Kind kind() const;
  const std::string& name() const;        // atomic
  const std::string& individual() const;  // nominal
  const ConceptExpr& left() const;        // conj
  const ConceptExpr& right() const;       // conj
  const std::string& role() const;        // exists
  const ConceptExpr& filler() const;      // exists

  bool is_atomic() const { return kind() == Kind::atomic; }

  // Structural equality. Conjunction is ordered: A and B != B and A here;
  // semantic equivalence is the saturation engine's business.
  friend bool operator==(const ConceptExpr& a, const ConceptExpr& b);
  friend bool operator!=(const ConceptExpr& a, const ConceptExpr& b) {
    return !(a == b);
  }

  // Surface syntax, re-parseable: "exists r.(A and B)".
  std::string to_string() const;

  // Number of connective nodes (conj/exists/nominal); used for the
  // normalization size bound.
  int connective_count() const;

private:
  struct Node;
  explicit ConceptExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct StrictAxiom {
  ConceptExpr lhs;
  ConceptExpr rhs;  // lhs <= rhs
  SourceSpan span;

  friend bool operator==(const StrictAxiom& a, const StrictAxiom& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;  // spans excluded
  }
};

struct ConceptAssertion {
  ConceptExpr concept_expr;
  std::string individual;
  SourceSpan span;

  friend bool operator==(const ConceptAssertion& a, const ConceptAssertion& b) {
    return a.concept_expr == b.concept_expr && a.individual == b.individual;
  }
};

struct RoleAssertion {
  std::string role;
  std::string subject;
  std::string object;
  SourceSpan span;

  friend bool operator==(const RoleAssertion& a, const RoleAssertion& b) {
    return a.role == b.role && a.subject == b.subject && a.object == b.object;
  }
};

using Assertion = std::variant<ConceptAssertion, RoleAssertion>;

// One weighted typicality inclusion T(subject) <= head @ weight. The subject
// is an atomic concept name; compound subjects are compiled to fresh names
// before they reach this type.
struct WeightedInclusion {
  std::string subject;
  ConceptExpr head;
  std::int64_t weight = 0;
  SourceSpan span;

  friend bool operator==(const WeightedInclusion& a,
                         const WeightedInclusion& b) {
    return a.subject == b.subject && a.head == b.head && a.weight == b.weight;
  }
};

struct Signature {
  std::set<std::string> concepts;
  std::set<std::string> roles;
  std::set<std::string> individuals;

  friend bool operator==(const Signature&, const Signature&) = default;
};

// A weighted knowledge base: strict TBox, per-concept weighted typicality
// inclusions, ABox, declared signature. Immutable by convention once built.
struct KnowledgeBase {
  Signature signature;
  // Concepts that carry typicality inclusions, in first-occurrence order.
  std::vector<std::string> distinguished;
  std::vector<StrictAxiom> strict;
  std::vector<WeightedInclusion> defeasible;  // declaration order
  std::vector<Assertion> abox;

  friend bool operator==(const KnowledgeBase& a, const KnowledgeBase& b) {
    return a.signature == b.signature && a.distinguished == b.distinguished &&
           a.strict == b.strict && a.defeasible == b.defeasible &&
           a.abox == b.abox;
  }

  std::vector<const WeightedInclusion*> defeasible_for(
      const std::string& subject) const;
};

// T(subject) <= object when typicality, plain subject <= object otherwise.
struct Query {
  ConceptExpr subject;
  ConceptExpr object;
  bool typicality = true;

  friend bool operator==(const Query&, const Query&) = default;
  std::string to_string() const;
};

struct Diagnostic {
  std::optional<SourceSpan> span;
  std::string message;
  std::string to_string() const;
};

// Empty result means every model invariant holds. Idempotent, side-effect
// free.
std::vector<Diagnostic> validate_kb(const KnowledgeBase& kb);

struct SignatureNames {
  std::vector<std::string> concepts;     // sorted
  std::vector<std::string> roles;        // sorted
  std::vector<std::string> individuals;  // sorted
};

// Names declared by or occurring in the KB, sorted.
SignatureNames signature_of(const KnowledgeBase& kb);

// Recompute the distinguished list from the defeasible inclusions
// (first-occurrence order of subjects). Used when assembling KBs by hand.
std::vector<std::string> distinguished_of(
    const std::vector<WeightedInclusion>& defeasible);

}  // namespace cwm
