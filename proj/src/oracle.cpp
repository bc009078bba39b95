// Brute-force reference decision procedure. Everything here is written for
// obviousness over speed and stays independent of the engine: plain string
// atoms in ordered sets, whole-ruleset sweeps to a fixpoint, and the weight,
// preference and minima definitions spelled out one quantifier at a time.

#include "cwm/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "cwm/errors.hpp"
#include "cwm/normalize.hpp"

namespace cwm {

namespace {

// kind 0: inst(a, b); kind 1: triple(a, b, c) with b the role.
using Fact = std::tuple<int, std::string, std::string, std::string>;
using Facts = std::set<Fact>;

Fact inst(const std::string& t, const std::string& c) {
  return {0, t, c, ""};
}
Fact triple(const std::string& x, const std::string& r, const std::string& y) {
  return {1, x, r, y};
}

struct NaiveReasoner {
  const NormalizedKB& nkb;

  Facts base_facts() const {
    Facts facts;
    for (const auto& ind : nkb.individual_names)
      facts.insert(inst(ind, "Top"));
    for (const auto& ca : nkb.concept_asserts)
      facts.insert(inst(ca.individual, ca.cls));
    for (const auto& ra : nkb.role_asserts)
      facts.insert(triple(ra.subject, ra.role, ra.object));
    return facts;
  }

  void saturate(Facts& facts) const {
    bool changed = true;
    while (changed) {
      changed = false;
      auto add = [&](const Fact& f) {
        if (facts.insert(f).second) changed = true;
      };

      // Every term occurring anywhere is a Top instance.
      for (const auto& [kind, a, b, c] : Facts(facts)) {
        if (kind == 0) {
          add(inst(a, "Top"));
        } else {
          add(inst(a, "Top"));
          add(inst(c, "Top"));
        }
      }

      std::size_t slot = 0;
      for (const auto& ax : nkb.axioms) {
        if (const auto* s = std::get_if<SubAtomic>(&ax)) {
          for (const auto& [kind, x, cls, unused] : Facts(facts))
            if (kind == 0 && cls == s->sub) add(inst(x, s->sup));
        } else if (const auto* s2 = std::get_if<SubConj>(&ax)) {
          for (const auto& [kind, x, cls, unused] : Facts(facts))
            if (kind == 0 && cls == s2->left &&
                facts.count(inst(x, s2->right)))
              add(inst(x, s2->sup));
        } else if (const auto* s3 = std::get_if<SubExists>(&ax)) {
          for (const auto& [kind, x, r, y] : Facts(facts))
            if (kind == 1 && r == s3->role && facts.count(inst(y, s3->filler)))
              add(inst(x, s3->sup));
        } else if (const auto* s4 = std::get_if<SupExists>(&ax)) {
          std::string w = "w#" + std::to_string(slot);
          for (const auto& [kind, x, cls, unused] : Facts(facts))
            if (kind == 0 && cls == s4->sub) {
              add(triple(x, s4->role, w));
              add(inst(w, s4->filler));
            }
        } else if (const auto* s5 = std::get_if<NominalClass>(&ax)) {
          add(inst(s5->individual, s5->cls));
          // Anything classified into {a} shares all classes and edges with a.
          for (const auto& [kind, x, cls, unused] : Facts(facts)) {
            if (kind != 0 || cls != s5->cls || x == s5->individual) continue;
            for (const auto& [kind2, t2, c2, u2] : Facts(facts)) {
              if (kind2 != 0) continue;
              if (t2 == s5->individual) add(inst(x, c2));
              if (t2 == x) add(inst(s5->individual, c2));
            }
            for (const auto& [kind2, z, u, y] : Facts(facts)) {
              if (kind2 != 1) continue;
              if (y == x) add(triple(z, u, s5->individual));
              if (y == s5->individual) add(triple(z, u, x));
              if (z == x) add(triple(s5->individual, u, y));
              if (z == s5->individual) add(triple(x, u, y));
            }
          }
        }
        if (std::holds_alternative<SupExists>(ax)) ++slot;
      }
    }
  }

  bool inconsistent(const Facts& facts) const {
    for (const auto& ax : nkb.axioms)
      if (const auto* s = std::get_if<SubBot>(&ax))
        for (const auto& [kind, x, cls, unused] : facts)
          if (kind == 0 && cls == s->sub) return true;
    return false;
  }

  // Subsumption by a fresh test individual: sub <= sup iff asserting a probe
  // into sub forces it into sup or blows the KB up.
  bool probe_subsumes(const std::string& sub, const std::string& sup) const {
    Facts facts = base_facts();
    facts.insert(inst("?probe", sub));
    saturate(facts);
    return inconsistent(facts) || facts.count(inst("?probe", sup)) > 0;
  }
};

bool global_prefers_literal(
    const std::map<std::string, std::optional<std::int64_t>>& wx,
    const std::map<std::string, std::optional<std::int64_t>>& wy,
    const std::vector<std::string>& dist,
    const std::set<std::pair<std::string, std::string>>& morespec) {
  auto less_cw = [](const std::optional<std::int64_t>& a,
                    const std::optional<std::int64_t>& b) {
    // "x <_Ci y iff W_i(x) > W_i(y)"; nullopt is minus infinity.
    if (!a.has_value()) return false;
    if (!b.has_value()) return true;
    return *a > *b;
  };
  bool exists_i = false;
  for (const auto& ci : dist)
    if (less_cw(wx.at(ci), wy.at(ci))) exists_i = true;
  if (!exists_i) return false;
  for (const auto& cj : dist) {
    bool x_leq_y = !less_cw(wy.at(cj), wx.at(cj));
    if (x_leq_y) continue;
    bool exists_h = false;
    for (const auto& ch : dist)
      if (morespec.count({ch, cj}) && less_cw(wx.at(ch), wy.at(ch)))
        exists_h = true;
    if (!exists_h) return false;
  }
  return true;
}

}  // namespace

OracleVerdict oracle_decide(const KnowledgeBase& kb, const Query& q,
                            std::size_t max_classes) {
  NormalizedQuery nq = normalize_query(normalize_kb(kb), q);
  const NormalizedKB& nkb = nq.kb;
  if (nkb.class_names.size() > max_classes)
    throw OracleCapError("oracle cap exceeded: " +
                         std::to_string(nkb.class_names.size()) +
                         " class names after normalization (max " +
                         std::to_string(max_classes) + ")");

  NaiveReasoner reasoner{nkb};
  OracleVerdict verdict;

  if (!q.typicality) {
    Facts probe = reasoner.base_facts();
    probe.insert(inst("?probe", nq.subject));
    reasoner.saturate(probe);
    verdict.vacuous = reasoner.inconsistent(probe);
    verdict.entailed =
        verdict.vacuous || probe.count(inst("?probe", nq.object)) > 0;
    return verdict;
  }

  // Candidate types: one per subset of class names containing the subject,
  // keeping the distinct consistent closures of the prototype element.
  std::vector<std::string> classes = nkb.class_names;
  std::set<std::set<std::string>> types;
  Facts base = reasoner.base_facts();
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << classes.size());
       ++mask) {
    Facts facts = base;
    facts.insert(inst("?aux", nq.subject));
    bool subject_in = false;
    for (std::size_t i = 0; i < classes.size(); ++i)
      if (mask & (std::uint64_t(1) << i)) {
        facts.insert(inst("?aux", classes[i]));
        if (classes[i] == nq.subject) subject_in = true;
      }
    // Skip masks omitting the subject unless the subject is Top (always in).
    if (!subject_in && nq.subject != "Top") continue;
    reasoner.saturate(facts);
    if (reasoner.inconsistent(facts)) continue;
    std::set<std::string> type;
    for (const auto& [kind, t, c, unused] : facts)
      if (kind == 0 && t == "?aux") type.insert(c);
    types.insert(std::move(type));
  }

  verdict.candidate_count = types.size();
  if (types.empty()) {
    verdict.vacuous = true;
    verdict.entailed = true;
    return verdict;
  }

  // Weight of each type per distinguished concept, straight from the
  // definition: the sum over satisfied heads, minus infinity off-concept.
  std::vector<OracleType> candidates;
  for (const auto& type : types) {
    OracleType ot;
    ot.concepts = type;
    for (std::size_t i = 0; i < nkb.distinguished.size(); ++i) {
      const std::string& ci = nkb.distinguished[i];
      if (!type.count(ci)) {
        ot.weights[ci] = std::nullopt;
        continue;
      }
      std::int64_t sum = 0;
      for (const auto& rule : nkb.typicality[i])
        if (type.count(rule.head)) sum = checked_add(sum, rule.weight);
      ot.weights[ci] = sum;
    }
    candidates.push_back(std::move(ot));
  }

  bool subject_distinguished =
      std::find(nkb.distinguished.begin(), nkb.distinguished.end(),
                nq.subject) != nkb.distinguished.end();

  std::vector<bool> dominated(candidates.size(), false);
  if (subject_distinguished) {
    for (std::size_t a = 0; a < candidates.size(); ++a)
      for (std::size_t b = 0; b < candidates.size(); ++b) {
        if (a == b) continue;
        const auto& wa = candidates[a].weights.at(nq.subject);
        const auto& wb = candidates[b].weights.at(nq.subject);
        // Both contain the subject, so both weights are finite.
        if (*wa > *wb) dominated[b] = true;
      }
  } else {
    std::set<std::pair<std::string, std::string>> morespec;
    for (const auto& ch : nkb.distinguished)
      for (const auto& cj : nkb.distinguished)
        if (ch != cj && reasoner.probe_subsumes(ch, cj) &&
            !reasoner.probe_subsumes(cj, ch))
          morespec.insert({ch, cj});
    for (std::size_t a = 0; a < candidates.size(); ++a)
      for (std::size_t b = 0; b < candidates.size(); ++b)
        if (a != b &&
            global_prefers_literal(candidates[a].weights,
                                   candidates[b].weights, nkb.distinguished,
                                   morespec))
          dominated[b] = true;
  }

  verdict.entailed = true;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (dominated[i]) continue;
    if (!candidates[i].concepts.count(nq.object)) verdict.entailed = false;
    verdict.preferred.push_back(candidates[i]);
  }
  return verdict;
}

namespace {
std::string type_key(const std::set<std::string>& concepts,
                     const std::vector<std::pair<std::string, std::string>>&
                         weights_in_order) {
  std::ostringstream out;
  bool first = true;
  for (const auto& c : concepts) {
    if (!first) out << ',';
    first = false;
    out << c;
  }
  out << '|';
  first = true;
  for (const auto& [name, w] : weights_in_order) {
    if (!first) out << ',';
    first = false;
    out << name << '=' << w;
  }
  return out.str();
}
}  // namespace

ComparableVerdict comparable(const OracleVerdict& v) {
  ComparableVerdict out{v.entailed, v.vacuous, v.candidate_count, {}};
  for (const auto& t : v.preferred) {
    std::vector<std::pair<std::string, std::string>> ws;
    for (const auto& [name, w] : t.weights)
      ws.push_back({name, w ? std::to_string(*w) : std::string("-inf")});
    out.preferred_keys.insert(type_key(t.concepts, ws));
  }
  return out;
}

ComparableVerdict comparable(const EntailmentVerdict& v) {
  ComparableVerdict out{v.entailed, v.vacuous, v.candidate_count, {}};
  for (const auto& t : v.preferred) {
    std::set<std::string> concepts;
    t.concepts.for_each(
        [&](ClassId c) { concepts.insert(v.kb->class_name(c)); });
    std::vector<std::pair<std::string, std::string>> ws;
    const auto& src = v.kb->source();
    // Name-sorted, matching the oracle's map order.
    std::vector<std::size_t> order(src.distinguished.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return src.distinguished[a] < src.distinguished[b];
    });
    for (std::size_t i : order)
      ws.push_back({src.distinguished[i], t.weights[i].to_string()});
    out.preferred_keys.insert(type_key(concepts, ws));
  }
  return out;
}

std::string ComparableVerdict::to_string() const {
  std::ostringstream out;
  out << (entailed ? "entailed" : "not-entailed")
      << (vacuous ? " (vacuous)" : "") << ", candidates=" << candidate_count
      << ", preferred=" << preferred_keys.size();
  return out.str();
}

}  // namespace cwm
