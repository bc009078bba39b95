#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "cwm/model.hpp"

namespace cwm {

// Normal-form axioms over atomic operands. An operand is a concept name, the
// reserved name "Top", or a nominal class written "{a}" (braces make it
// collision-free with declared names).
struct SubAtomic {  // sub <= sup
  std::string sub, sup;
  friend bool operator==(const SubAtomic&, const SubAtomic&) = default;
};
struct SubConj {  // left and right <= sup
  std::string left, right, sup;
  friend bool operator==(const SubConj&, const SubConj&) = default;
};
struct SubExists {  // exists role.filler <= sup
  std::string role, filler, sup;
  friend bool operator==(const SubExists&, const SubExists&) = default;
};
struct SupExists {  // sub <= exists role.filler
  std::string sub, role, filler;
  friend bool operator==(const SupExists&, const SupExists&) = default;
};
struct SubBot {  // sub <= Bot
  std::string sub;
  friend bool operator==(const SubBot&, const SubBot&) = default;
};
struct NominalClass {  // cls is the class standing for {individual}
  std::string individual, cls;
  friend bool operator==(const NominalClass&, const NominalClass&) = default;
};

using NormalAxiom = std::variant<SubAtomic, SubConj, SubExists, SupExists,
                                 SubBot, NominalClass>;

std::string normal_axiom_to_string(const NormalAxiom& ax);

struct NormalizedConceptAssertion {
  std::string individual, cls;
  friend bool operator==(const NormalizedConceptAssertion&,
                         const NormalizedConceptAssertion&) = default;
};
struct NormalizedRoleAssertion {
  std::string role, subject, object;
  friend bool operator==(const NormalizedRoleAssertion&,
                         const NormalizedRoleAssertion&) = default;
};

struct TypicalityRule {
  std::string head;
  std::int64_t weight = 0;
  friend bool operator==(const TypicalityRule&, const TypicalityRule&) = default;
};

struct NormalizedKB {
  std::vector<NormalAxiom> axioms;
  std::vector<std::string> distinguished;  // atomic names, KB order
  // Parallel to `distinguished`: the weighted inclusions with atomic heads.
  std::vector<std::vector<TypicalityRule>> typicality;
  std::vector<NormalizedConceptAssertion> concept_asserts;
  std::vector<NormalizedRoleAssertion> role_asserts;
  // Fresh and nominal class names mapped back to the expressions they stand
  // for; used when rendering explanations.
  std::map<std::string, ConceptExpr> fresh_registry;
  // All class names except Top, sorted. Includes fresh and nominal classes.
  std::vector<std::string> class_names;
  std::vector<std::string> role_names;        // sorted
  std::vector<std::string> individual_names;  // sorted

  bool has_class(const std::string& name) const;
  std::string display_name(const std::string& cls) const;

  friend bool operator==(const NormalizedKB& a, const NormalizedKB& b) {
    return a.axioms == b.axioms && a.distinguished == b.distinguished &&
           a.typicality == b.typicality &&
           a.concept_asserts == b.concept_asserts &&
           a.role_asserts == b.role_asserts;
  }
};

// Which side of a complex axiom gets decomposed first. The two orders give
// structurally different, semantically equivalent outputs; tests cross-check
// them against each other.
enum class DecompOrder { left_first, right_first };

// Linear-time structural transformation into normal form. Strict axioms are
// decomposed unidirectionally; typicality heads get definitional
// (bidirectional) fresh names so that weights track semantic membership.
NormalizedKB normalize_kb(const KnowledgeBase& kb,
                          DecompOrder order = DecompOrder::left_first);

struct NormalizedQuery {
  NormalizedKB kb;      // input KB extended with definitional query axioms
  std::string subject;  // class name for the query subject
  std::string object;   // class name for the query object
};

// Extends the normalized KB with definitional names for the query's subject
// and object (bidirectional, so non-membership stays meaningful).
NormalizedQuery normalize_query(const NormalizedKB& nkb, const Query& q);

// Shape check on an un-normalized KB: every axiom already matches a normal
// shape and every typicality head is atomic.
bool is_normal_form(const KnowledgeBase& kb);

// Renders the normalized KB in the regular surface syntax (fresh names
// declared as ordinary concepts, nominal classes printed as "{a}").
std::string render_normalized(const NormalizedKB& nkb);

}  // namespace cwm
