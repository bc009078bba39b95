#include "cwm/model.hpp"

#include <algorithm>

namespace cwm {

// A null node_ means Top; leaves stay allocation-free that way and the
// default constructor is trivial.
struct ConceptExpr::Node {
  Kind kind = Kind::top;
  std::string text;  // atomic name, nominal individual, or role
  ConceptExpr a;     // conj left / exists filler
  ConceptExpr b;     // conj right
};

ConceptExpr::ConceptExpr() : node_(nullptr) {}

ConceptExpr ConceptExpr::top() { return ConceptExpr(); }

ConceptExpr ConceptExpr::bot() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::bot;
  return ConceptExpr(std::move(n));
}

ConceptExpr ConceptExpr::atomic(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::atomic;
  n->text = std::move(name);
  return ConceptExpr(std::move(n));
}

ConceptExpr ConceptExpr::nominal(std::string individual) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::nominal;
  n->text = std::move(individual);
  return ConceptExpr(std::move(n));
}

ConceptExpr ConceptExpr::conj(ConceptExpr left, ConceptExpr right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::conj;
  n->a = std::move(left);
  n->b = std::move(right);
  return ConceptExpr(std::move(n));
}

ConceptExpr ConceptExpr::exists(std::string role, ConceptExpr filler) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::exists;
  n->text = std::move(role);
  n->a = std::move(filler);
  return ConceptExpr(std::move(n));
}

ConceptExpr::Kind ConceptExpr::kind() const {
  return node_ ? node_->kind : Kind::top;
}
const std::string& ConceptExpr::name() const { return node_->text; }
const std::string& ConceptExpr::individual() const { return node_->text; }
const std::string& ConceptExpr::role() const { return node_->text; }
const ConceptExpr& ConceptExpr::left() const { return node_->a; }
const ConceptExpr& ConceptExpr::right() const { return node_->b; }
const ConceptExpr& ConceptExpr::filler() const { return node_->a; }

bool operator==(const ConceptExpr& a, const ConceptExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ConceptExpr::Kind::top:
    case ConceptExpr::Kind::bot:
      return true;
    case ConceptExpr::Kind::atomic:
      return a.name() == b.name();
    case ConceptExpr::Kind::nominal:
      return a.individual() == b.individual();
    case ConceptExpr::Kind::conj:
      return a.left() == b.left() && a.right() == b.right();
    case ConceptExpr::Kind::exists:
      return a.role() == b.role() && a.filler() == b.filler();
  }
  return false;
}

namespace {
// Precedence: conj binds loosest; exists takes a primary filler.
void render(const ConceptExpr& c, std::string& out, bool parenthesize_conj) {
  switch (c.kind()) {
    case ConceptExpr::Kind::top:
      out += "Top";
      return;
    case ConceptExpr::Kind::bot:
      out += "Bot";
      return;
    case ConceptExpr::Kind::atomic:
      out += c.name();
      return;
    case ConceptExpr::Kind::nominal:
      out += '{';
      out += c.individual();
      out += '}';
      return;
    case ConceptExpr::Kind::conj: {
      if (parenthesize_conj) out += '(';
      // Right-associated chains print bare; a conj in left position needs
      // parentheses to survive re-parsing.
      render(c.left(), out, c.left().kind() == ConceptExpr::Kind::conj);
      out += " and ";
      render(c.right(), out, false);
      if (parenthesize_conj) out += ')';
      return;
    }
    case ConceptExpr::Kind::exists: {
      out += "exists ";
      out += c.role();
      out += '.';
      const ConceptExpr& f = c.filler();
      if (f.kind() == ConceptExpr::Kind::conj) {
        out += '(';
        render(f, out, false);
        out += ')';
      } else {
        render(f, out, false);
      }
      return;
    }
  }
}
}  // namespace

std::string ConceptExpr::to_string() const {
  std::string out;
  render(*this, out, false);
  return out;
}

int ConceptExpr::connective_count() const {
  switch (kind()) {
    case Kind::top:
    case Kind::bot:
    case Kind::atomic:
      return 0;
    case Kind::nominal:
      return 1;
    case Kind::conj:
      return 1 + left().connective_count() + right().connective_count();
    case Kind::exists:
      return 1 + filler().connective_count();
  }
  return 0;
}

std::string Query::to_string() const {
  if (typicality)
    return "T(" + subject.to_string() + ") <= " + object.to_string();
  return subject.to_string() + " <= " + object.to_string();
}

std::string Diagnostic::to_string() const {
  if (span && span->known())
    return "line " + std::to_string(span->line) + ":" +
           std::to_string(span->column) + ": " + message;
  return message;
}

std::vector<const WeightedInclusion*> KnowledgeBase::defeasible_for(
    const std::string& subject) const {
  std::vector<const WeightedInclusion*> out;
  for (const auto& d : defeasible)
    if (d.subject == subject) out.push_back(&d);
  return out;
}

std::vector<std::string> distinguished_of(
    const std::vector<WeightedInclusion>& defeasible) {
  std::vector<std::string> out;
  for (const auto& d : defeasible)
    if (std::find(out.begin(), out.end(), d.subject) == out.end())
      out.push_back(d.subject);
  return out;
}

namespace {

void collect_names(const ConceptExpr& c, Signature& used) {
  switch (c.kind()) {
    case ConceptExpr::Kind::top:
    case ConceptExpr::Kind::bot:
      return;
    case ConceptExpr::Kind::atomic:
      used.concepts.insert(c.name());
      return;
    case ConceptExpr::Kind::nominal:
      used.individuals.insert(c.individual());
      return;
    case ConceptExpr::Kind::conj:
      collect_names(c.left(), used);
      collect_names(c.right(), used);
      return;
    case ConceptExpr::Kind::exists:
      used.roles.insert(c.role());
      collect_names(c.filler(), used);
      return;
  }
}

void check_concept(const ConceptExpr& c, const Signature& sig,
                   const SourceSpan& span, std::vector<Diagnostic>& out) {
  Signature used;
  collect_names(c, used);
  for (const auto& n : used.concepts)
    if (!sig.concepts.count(n))
      out.push_back({span, "undeclared concept name '" + n + "'"});
  for (const auto& n : used.roles)
    if (!sig.roles.count(n))
      out.push_back({span, "undeclared role name '" + n + "'"});
  for (const auto& n : used.individuals)
    if (!sig.individuals.count(n))
      out.push_back({span, "undeclared individual name '" + n + "'"});
}

}  // namespace

std::vector<Diagnostic> validate_kb(const KnowledgeBase& kb) {
  std::vector<Diagnostic> out;
  for (const auto& ax : kb.strict) {
    check_concept(ax.lhs, kb.signature, ax.span, out);
    check_concept(ax.rhs, kb.signature, ax.span, out);
  }
  std::set<std::string> dist(kb.distinguished.begin(), kb.distinguished.end());
  if (dist.size() != kb.distinguished.size())
    out.push_back({std::nullopt, "distinguished concept listed twice"});
  for (const auto& d : kb.defeasible) {
    if (!kb.signature.concepts.count(d.subject))
      out.push_back({d.span, "undeclared concept name '" + d.subject +
                                 "' used as typicality subject"});
    if (!dist.count(d.subject))
      out.push_back({d.span, "typicality subject '" + d.subject +
                                 "' missing from the distinguished set"});
    check_concept(d.head, kb.signature, d.span, out);
  }
  for (const auto& name : kb.distinguished) {
    bool has_inclusion = false;
    for (const auto& d : kb.defeasible)
      if (d.subject == name) has_inclusion = true;
    if (!has_inclusion)
      out.push_back({std::nullopt, "distinguished concept '" + name +
                                       "' has no typicality inclusions"});
  }
  for (const auto& a : kb.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      check_concept(ca->concept_expr, kb.signature, ca->span, out);
      if (!kb.signature.individuals.count(ca->individual))
        out.push_back(
            {ca->span, "undeclared individual name '" + ca->individual + "'"});
    } else {
      const auto& ra = std::get<RoleAssertion>(a);
      if (!kb.signature.roles.count(ra.role))
        out.push_back({ra.span, "undeclared role name '" + ra.role + "'"});
      for (const auto* ind : {&ra.subject, &ra.object})
        if (!kb.signature.individuals.count(*ind))
          out.push_back({ra.span, "undeclared individual name '" + *ind + "'"});
    }
  }
  return out;
}

SignatureNames signature_of(const KnowledgeBase& kb) {
  Signature all = kb.signature;
  for (const auto& ax : kb.strict) {
    collect_names(ax.lhs, all);
    collect_names(ax.rhs, all);
  }
  for (const auto& d : kb.defeasible) {
    all.concepts.insert(d.subject);
    collect_names(d.head, all);
  }
  for (const auto& a : kb.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      collect_names(ca->concept_expr, all);
      all.individuals.insert(ca->individual);
    } else {
      const auto& ra = std::get<RoleAssertion>(a);
      all.roles.insert(ra.role);
      all.individuals.insert(ra.subject);
      all.individuals.insert(ra.object);
    }
  }
  SignatureNames out;
  out.concepts.assign(all.concepts.begin(), all.concepts.end());
  out.roles.assign(all.roles.begin(), all.roles.end());
  out.individuals.assign(all.individuals.begin(), all.individuals.end());
  return out;
}

}  // namespace cwm
