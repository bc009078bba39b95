#include "cwm/entailment.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "cwm/errors.hpp"
#include "cwm/normalize.hpp"

namespace cwm {

namespace {

struct Enumerator {
  Enumerator(const CompiledKB& k, std::uint64_t b) : kb(k), budget(b) {}

  const CompiledKB& kb;
  std::uint64_t budget;
  std::uint64_t explored = 0;
  std::vector<ClassId> optional_classes;
  std::unordered_set<ClassSet, ClassSet::Hasher> seen;
  std::vector<CandidateType> out;

  void leaf(const Saturation& sat) {
    const ClassSet& type = sat.prototype_classes();
    if (!seen.insert(type).second) return;
    out.push_back({type, weight_vector_of(type, kb)});
  }

  // Depth-first over "seed class i or not". The not-branch reuses the
  // current saturation; the seed-branch extends a copy. Inconsistent
  // prefixes prune their whole subtree (the fixpoint is monotone in seeds),
  // and seeding an already-derived class is skipped because the closure
  // cannot change.
  void walk(const Saturation& sat, std::size_t i) {
    if (sat.inconsistent()) return;
    if (i == optional_classes.size()) {
      leaf(sat);
      return;
    }
    walk(sat, i + 1);
    ClassId cls = optional_classes[i];
    if (sat.prototype_classes().test(cls)) return;  // same closure as above
    if (++explored > budget) throw BudgetError(budget, explored);
    Saturation extended = sat;
    extended.seed_prototype(cls);
    extended.run();
    walk(extended, i + 1);
  }
};

}  // namespace

std::vector<CandidateType> enumerate_candidates(
    const std::shared_ptr<const CompiledKB>& kb, ClassId subject,
    std::uint64_t budget) {
  Enumerator en{*kb, budget};
  for (ClassId c = 1; c < kb->class_count(); ++c)
    if (c != subject) en.optional_classes.push_back(c);

  Saturation base(kb, Saturation::Mode::instance);
  base.seed_base();
  base.seed_prototype(subject);
  base.run();
  en.walk(base, 0);

  std::sort(en.out.begin(), en.out.end(),
            [](const CandidateType& a, const CandidateType& b) {
              return a.concepts < b.concepts;
            });
  return en.out;
}

EntailmentVerdict decide_entailment(const KnowledgeBase& kb, const Query& q,
                                    const DecideOptions& opts) {
  auto started = std::chrono::steady_clock::now();
  {
    auto diags = validate_kb(kb);
    if (!diags.empty())
      throw ReasonerError("invalid knowledge base: " + diags.front().to_string());
  }

  NormalizedQuery nq = normalize_query(normalize_kb(kb, opts.decomp_order), q);
  auto compiled = CompiledKB::compile(std::move(nq.kb));

  EntailmentVerdict v;
  v.kb = compiled;
  v.subject_name = nq.subject;
  v.object_name = nq.object;
  v.query = q;

  ClassId subject = compiled->class_id(nq.subject);
  ClassId object = compiled->class_id(nq.object);

  if (!q.typicality) {
    StrictClassifier classifier(compiled);
    v.entailed = classifier.subsumes(subject, object);
    v.vacuous = classifier.unsatisfiable(subject);
  } else {
    std::vector<CandidateType> candidates =
        enumerate_candidates(compiled, subject, opts.candidate_budget);
    v.candidate_count = candidates.size();
    if (candidates.empty()) {
      v.vacuous = true;
      v.entailed = true;
    } else {
      const auto& dist = compiled->distinguished();
      auto it = std::find(dist.begin(), dist.end(), subject);
      if (it != dist.end()) {
        // The subject carries its own preference relation; its typical
        // instances are the concept-wise minima.
        v.preferred =
            minimal_by_concept(candidates, (std::size_t)(it - dist.begin()));
      } else {
        StrictClassifier classifier(compiled);
        v.preferred =
            minimal_candidates(candidates, compute_specificity(classifier));
      }
      v.entailed = std::all_of(
          v.preferred.begin(), v.preferred.end(),
          [&](const CandidateType& t) { return t.concepts.test(object); });
    }
  }
  v.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - started);
  return v;
}

std::string explain(const EntailmentVerdict& v) {
  std::ostringstream out;
  out << "query: " << v.query.to_string() << '\n';
  out << "verdict: " << (v.entailed ? "entailed" : "not entailed");
  if (v.vacuous) out << " (vacuously: the subject has no consistent type)";
  out << '\n';
  if (!v.query.typicality) {
    out << "decided by strict subsumption\n";
    return out.str();
  }
  if (v.vacuous) {
    out << "the subject concept is unsatisfiable under the strict axioms\n";
    return out.str();
  }
  const CompiledKB& kb = *v.kb;
  const NormalizedKB& src = kb.source();
  out << "candidates: " << v.candidate_count
      << ", preferred: " << v.preferred.size() << '\n';
  for (std::size_t ti = 0; ti < v.preferred.size(); ++ti) {
    const CandidateType& t = v.preferred[ti];
    out << "preferred type " << (ti + 1) << ": {";
    bool first = true;
    t.concepts.for_each([&](ClassId c) {
      if (!first) out << ", ";
      first = false;
      out << kb.display_name(c);
    });
    out << "}\n";
    for (std::size_t di = 0; di < kb.distinguished().size(); ++di) {
      const std::string& dname = src.distinguished[di];
      out << "  " << dname << ": weight " << t.weights[di].to_string();
      bool instance = t.concepts.test(kb.distinguished()[di]);
      if (!instance) out << " (not an instance; inclusions hold vacuously)";
      out << '\n';
      for (const auto& [head, w] : kb.typicality()[di]) {
        bool satisfied = !instance || t.concepts.test(head);
        out << "    " << (satisfied ? "satisfied" : "violated ") << "  T("
            << dname << ") <= " << kb.display_name(head) << " @ " << w << '\n';
      }
    }
    out << "  object " << kb.display_name(kb.class_id(v.object_name)) << ": "
        << (t.concepts.test(kb.class_id(v.object_name)) ? "present" : "absent")
        << '\n';
  }
  return out.str();
}

}  // namespace cwm
