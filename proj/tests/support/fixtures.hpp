#pragma once

#include <stdexcept>
#include <string>

#include "cwm/parser.hpp"

namespace cwm::test {

// The employees/students KB used across the suites.
inline const char* emp_kb_text() {
  return R"(concept Emp Student Young Adult PhdStudent
role has_SSN has_boss has_classes hasScholarship
Emp <= Adult
Adult <= exists has_SSN.Top
PhdStudent <= Student
T(Emp) <= Young @ -50
T(Emp) <= exists has_boss.Emp @ 100
T(Emp) <= exists has_classes.Top @ -70
T(Student) <= Young @ 90
T(Student) <= exists has_classes.Top @ 80
T(Student) <= exists hasScholarship.Top @ -30
)";
}

inline KnowledgeBase parse_or_throw(const std::string& text) {
  ParseResult r = parse_kb(text);
  if (!r.ok())
    throw std::runtime_error("fixture KB failed to parse: " +
                             r.diagnostics.front().to_string());
  return *r.kb;
}

inline KnowledgeBase emp_kb() { return parse_or_throw(emp_kb_text()); }

inline Query query_or_throw(const std::string& text) {
  QueryParseResult r = parse_query(text);
  if (!r.ok())
    throw std::runtime_error("fixture query failed to parse: " +
                             r.diagnostics.front().to_string());
  return *r.query;
}

}  // namespace cwm::test
