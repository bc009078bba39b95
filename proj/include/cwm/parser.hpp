#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cwm/model.hpp"

namespace cwm {

// Parsing is total: any input yields either a value or diagnostics, never an
// exception.
struct ParseResult {
  std::optional<KnowledgeBase> kb;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return kb.has_value(); }
};

struct QueryParseResult {
  std::optional<Query> query;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return query.has_value(); }
};

struct ConceptParseResult {
  std::optional<ConceptExpr> concept_expr;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return concept_expr.has_value(); }
};

// Grammar (statements are line-based, '#' starts a comment):
//
//   decl       := "concept" NAME+ | "role" NAME+ | "individual" NAME+
//   strict     := concept "<=" concept
//   defeasible := "T(" NAME ")" "<=" concept "@" INT
//   assert     := concept "(" NAME ")" | NAME "(" NAME "," NAME ")"
//   concept    := "Top" | "Bot" | NAME | "{" NAME "}"
//              | concept "and" concept | "exists" NAME "." concept
//              | "(" concept ")"
//
// Names must be declared before use; "and" right-associates; the filler of
// "exists" is a primary concept (parenthesize to widen it).
ParseResult parse_kb(std::string_view text);

// "T(" concept ") <= " concept, or concept " <= " concept for a strict query.
QueryParseResult parse_query(std::string_view text);

ConceptParseResult parse_concept(std::string_view text);

// Deterministic rendering; parse_kb(render_kb(kb)) is structurally equal to
// kb for every valid KB.
std::string render_kb(const KnowledgeBase& kb);

}  // namespace cwm
