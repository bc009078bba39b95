#include "cwm/normalize.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cwm/errors.hpp"

namespace cwm {

namespace {

bool is_operand(const ConceptExpr& c) {
  switch (c.kind()) {
    case ConceptExpr::Kind::top:
    case ConceptExpr::Kind::atomic:
    case ConceptExpr::Kind::nominal:
      return true;
    default:
      return false;
  }
}

// In EL-bottom, Bot anywhere inside a concept makes the whole concept empty:
// conjunction and existential restriction are strict in Bot.
bool contains_bot(const ConceptExpr& c) {
  switch (c.kind()) {
    case ConceptExpr::Kind::bot:
      return true;
    case ConceptExpr::Kind::conj:
      return contains_bot(c.left()) || contains_bot(c.right());
    case ConceptExpr::Kind::exists:
      return contains_bot(c.filler());
    default:
      return false;
  }
}

struct Builder {
  NormalizedKB out;
  std::set<std::string> taken;    // every name in play, for freshness
  std::set<std::string> classes;  // class names only (except Top)
  std::uint64_t counter = 1;
  DecompOrder order = DecompOrder::left_first;

  std::string fresh(const ConceptExpr& origin) {
    for (;;) {
      if (counter == 0)
        throw ReasonerError("fresh-name counter overflowed");
      std::string name = "_N" + std::to_string(counter++);
      if (taken.insert(name).second) {
        classes.insert(name);
        out.fresh_registry.emplace(name, origin);
        return name;
      }
    }
  }

  // The class standing for {a}; interned once per individual.
  std::string nominal_class(const std::string& individual) {
    std::string name = "{" + individual + "}";
    if (taken.insert(name).second) {
      classes.insert(name);
      out.fresh_registry.emplace(name, ConceptExpr::nominal(individual));
      out.axioms.push_back(NominalClass{individual, name});
    }
    return name;
  }

  std::string operand(const ConceptExpr& c) {
    switch (c.kind()) {
      case ConceptExpr::Kind::top:
        return "Top";
      case ConceptExpr::Kind::atomic:
        return c.name();
      case ConceptExpr::Kind::nominal:
        return nominal_class(c.individual());
      default:
        throw ReasonerError("internal: operand() on a compound concept");
    }
  }

  std::string atomize(const ConceptExpr& c) {
    if (is_operand(c)) return operand(c);
    std::string name = fresh(c);
    gci(c, ConceptExpr::atomic(name));
    return name;
  }

  // lhs <= rhs, decomposed into normal shapes. Vacuous axioms (Bot on the
  // left) are dropped.
  void gci(const ConceptExpr& lhs, const ConceptExpr& rhs) {
    if (contains_bot(lhs)) return;
    if (contains_bot(rhs)) {
      out.axioms.push_back(SubBot{atomize(lhs)});
      return;
    }
    switch (rhs.kind()) {
      case ConceptExpr::Kind::conj:
        if (order == DecompOrder::left_first) {
          gci(lhs, rhs.left());
          gci(lhs, rhs.right());
        } else {
          gci(lhs, rhs.right());
          gci(lhs, rhs.left());
        }
        return;
      case ConceptExpr::Kind::exists: {
        const ConceptExpr& filler = rhs.filler();
        if (is_operand(filler)) {
          std::string a = atomize(lhs);
          out.axioms.push_back(SupExists{a, rhs.role(), operand(filler)});
          return;
        }
        if (order == DecompOrder::left_first) {
          std::string a = atomize(lhs);
          std::string x = fresh(filler);
          out.axioms.push_back(SupExists{a, rhs.role(), x});
          gci(ConceptExpr::atomic(x), filler);
        } else {
          std::string x = fresh(filler);
          gci(ConceptExpr::atomic(x), filler);
          out.axioms.push_back(SupExists{atomize(lhs), rhs.role(), x});
        }
        return;
      }
      default: {
        std::string sup = operand(rhs);
        switch (lhs.kind()) {
          case ConceptExpr::Kind::conj: {
            std::string a, b;
            if (order == DecompOrder::left_first) {
              a = atomize(lhs.left());
              b = atomize(lhs.right());
            } else {
              b = atomize(lhs.right());
              a = atomize(lhs.left());
            }
            out.axioms.push_back(SubConj{a, b, sup});
            return;
          }
          case ConceptExpr::Kind::exists: {
            std::string f = atomize(lhs.filler());
            out.axioms.push_back(SubExists{lhs.role(), f, sup});
            return;
          }
          default:
            out.axioms.push_back(SubAtomic{operand(lhs), sup});
            return;
        }
      }
    }
  }

  // Definitional name for a concept: name <= c and c <= name.
  std::string define(const ConceptExpr& c) {
    if (is_operand(c)) return operand(c);
    std::string name = fresh(c);
    ConceptExpr atom = ConceptExpr::atomic(name);
    gci(atom, c);
    gci(c, atom);
    return name;
  }

  void finish_names() {
    out.class_names.assign(classes.begin(), classes.end());
  }
};

Builder make_builder(const Signature& sig, DecompOrder order) {
  Builder b;
  b.order = order;
  for (const auto& n : sig.concepts) {
    b.taken.insert(n);
    b.classes.insert(n);
  }
  for (const auto& n : sig.roles) b.taken.insert(n);
  for (const auto& n : sig.individuals) b.taken.insert(n);
  b.out.role_names.assign(sig.roles.begin(), sig.roles.end());
  b.out.individual_names.assign(sig.individuals.begin(), sig.individuals.end());
  return b;
}

}  // namespace

NormalizedKB normalize_kb(const KnowledgeBase& kb, DecompOrder order) {
  Builder b = make_builder(kb.signature, order);
  for (const auto& ax : kb.strict) b.gci(ax.lhs, ax.rhs);

  b.out.distinguished = kb.distinguished;
  b.out.typicality.resize(kb.distinguished.size());
  for (const auto& d : kb.defeasible) {
    auto it = std::find(kb.distinguished.begin(), kb.distinguished.end(),
                        d.subject);
    std::size_t idx = (std::size_t)(it - kb.distinguished.begin());
    std::string head;
    if (contains_bot(d.head)) {
      // T(C) <= Bot with a weight: keep an explicitly unsatisfiable head.
      head = b.fresh(d.head);
      b.out.axioms.push_back(SubBot{head});
    } else {
      head = b.define(d.head);
    }
    b.out.typicality[idx].push_back({head, d.weight});
  }

  for (const auto& a : kb.abox) {
    if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
      std::string cls;
      if (contains_bot(ca->concept_expr)) {
        cls = b.fresh(ca->concept_expr);
        b.out.axioms.push_back(SubBot{cls});
      } else if (is_operand(ca->concept_expr)) {
        cls = b.operand(ca->concept_expr);
      } else {
        cls = b.fresh(ca->concept_expr);
        b.gci(ConceptExpr::atomic(cls), ca->concept_expr);
      }
      b.out.concept_asserts.push_back({ca->individual, cls});
    } else {
      const auto& ra = std::get<RoleAssertion>(a);
      b.out.role_asserts.push_back({ra.role, ra.subject, ra.object});
    }
  }

  b.finish_names();
  return std::move(b.out);
}

namespace {

void check_query_names(const ConceptExpr& c, const NormalizedKB& nkb) {
  switch (c.kind()) {
    case ConceptExpr::Kind::atomic:
      if (!nkb.has_class(c.name()))
        throw ReasonerError("unknown concept name '" + c.name() +
                            "' in query");
      return;
    case ConceptExpr::Kind::nominal:
      if (!std::binary_search(nkb.individual_names.begin(),
                              nkb.individual_names.end(), c.individual()))
        throw ReasonerError("unknown individual name '" + c.individual() +
                            "' in query");
      return;
    case ConceptExpr::Kind::conj:
      check_query_names(c.left(), nkb);
      check_query_names(c.right(), nkb);
      return;
    case ConceptExpr::Kind::exists:
      if (!std::binary_search(nkb.role_names.begin(), nkb.role_names.end(),
                              c.role()))
        throw ReasonerError("unknown role name '" + c.role() + "' in query");
      check_query_names(c.filler(), nkb);
      return;
    default:
      return;
  }
}

}  // namespace

NormalizedQuery normalize_query(const NormalizedKB& nkb, const Query& q) {
  check_query_names(q.subject, nkb);
  check_query_names(q.object, nkb);

  Builder b;
  b.out = nkb;
  for (const auto& n : nkb.class_names) {
    b.taken.insert(n);
    b.classes.insert(n);
  }
  for (const auto& n : nkb.role_names) b.taken.insert(n);
  for (const auto& n : nkb.individual_names) b.taken.insert(n);

  NormalizedQuery result;
  // Bot as a query concept gets a definitional unsatisfiable name so the
  // engine can treat it like any other class.
  auto define_side = [&](const ConceptExpr& c) -> std::string {
    if (contains_bot(c)) {
      std::string name = b.fresh(c);
      b.out.axioms.push_back(SubBot{name});
      return name;
    }
    return b.define(c);
  };
  result.subject = define_side(q.subject);
  result.object = define_side(q.object);
  b.finish_names();
  result.kb = std::move(b.out);
  return result;
}

bool NormalizedKB::has_class(const std::string& name) const {
  return name == "Top" ||
         std::binary_search(class_names.begin(), class_names.end(), name);
}

std::string NormalizedKB::display_name(const std::string& cls) const {
  auto it = fresh_registry.find(cls);
  return it != fresh_registry.end() ? it->second.to_string() : cls;
}

namespace {
// One of: op <= op, op <= Bot, op1 and op2 <= op, exists r.op <= op,
// op <= exists r.op.
bool axiom_is_normal(const ConceptExpr& l, const ConceptExpr& r) {
  if (is_operand(l)) {
    if (is_operand(r) || r.kind() == ConceptExpr::Kind::bot) return true;
    return r.kind() == ConceptExpr::Kind::exists && is_operand(r.filler());
  }
  if (!is_operand(r)) return false;
  if (l.kind() == ConceptExpr::Kind::conj)
    return is_operand(l.left()) && is_operand(l.right());
  if (l.kind() == ConceptExpr::Kind::exists) return is_operand(l.filler());
  return false;
}
}  // namespace

bool is_normal_form(const KnowledgeBase& kb) {
  for (const auto& ax : kb.strict)
    if (!axiom_is_normal(ax.lhs, ax.rhs)) return false;
  for (const auto& d : kb.defeasible)
    if (!is_operand(d.head)) return false;
  for (const auto& a : kb.abox)
    if (const auto* ca = std::get_if<ConceptAssertion>(&a))
      if (!is_operand(ca->concept_expr)) return false;
  return true;
}

std::string normal_axiom_to_string(const NormalAxiom& ax) {
  struct Visitor {
    std::string operator()(const SubAtomic& a) const {
      return a.sub + " <= " + a.sup;
    }
    std::string operator()(const SubConj& a) const {
      return a.left + " and " + a.right + " <= " + a.sup;
    }
    std::string operator()(const SubExists& a) const {
      return "exists " + a.role + "." + a.filler + " <= " + a.sup;
    }
    std::string operator()(const SupExists& a) const {
      return a.sub + " <= exists " + a.role + "." + a.filler;
    }
    std::string operator()(const SubBot& a) const { return a.sub + " <= Bot"; }
    std::string operator()(const NominalClass& a) const {
      return a.cls + " == {" + a.individual + "}";
    }
  };
  return std::visit(Visitor{}, ax);
}

std::string render_normalized(const NormalizedKB& nkb) {
  std::ostringstream out;
  std::vector<std::string> declarable;
  for (const auto& n : nkb.class_names)
    if (n.front() != '{') declarable.push_back(n);
  if (!declarable.empty()) {
    out << "concept";
    for (const auto& n : declarable) out << ' ' << n;
    out << '\n';
  }
  if (!nkb.role_names.empty()) {
    out << "role";
    for (const auto& n : nkb.role_names) out << ' ' << n;
    out << '\n';
  }
  if (!nkb.individual_names.empty()) {
    out << "individual";
    for (const auto& n : nkb.individual_names) out << ' ' << n;
    out << '\n';
  }
  for (const auto& ax : nkb.axioms) {
    // Nominal-class axioms are implicit in the brace syntax.
    if (std::holds_alternative<NominalClass>(ax)) continue;
    out << normal_axiom_to_string(ax) << '\n';
  }
  for (std::size_t i = 0; i < nkb.distinguished.size(); ++i)
    for (const auto& t : nkb.typicality[i])
      out << "T(" << nkb.distinguished[i] << ") <= " << t.head << " @ "
          << t.weight << '\n';
  for (const auto& ca : nkb.concept_asserts)
    out << ca.cls << "(" << ca.individual << ")\n";
  for (const auto& ra : nkb.role_asserts)
    out << ra.role << "(" << ra.subject << ", " << ra.object << ")\n";
  return out.str();
}

}  // namespace cwm
