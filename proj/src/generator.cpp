#include "cwm/generator.hpp"

#include <algorithm>
#include <random>

namespace cwm {

namespace {

// mt19937_64 output is bit-exact everywhere; avoid std distributions, whose
// results are implementation-defined.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  std::uint64_t below(std::uint64_t n) { return n ? gen() % n : 0; }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + (std::int64_t)below((std::uint64_t)(hi - lo + 1));
  }
  bool percent(int p) { return (int)below(100) < p; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }
};

}  // namespace

KnowledgeBase gen_random_kb(std::uint64_t seed, const GenLimits& limits) {
  Rng rng(seed);
  KnowledgeBase kb;

  int n_classes = (int)rng.range(1, std::max(1, limits.max_classes));
  int n_roles = (int)rng.range(0, std::max(0, limits.max_roles));
  int n_inds = (int)rng.range(0, std::max(0, limits.max_individuals));

  std::vector<std::string> classes, roles, inds;
  for (int i = 0; i < n_classes; ++i) {
    classes.push_back("C" + std::to_string(i));
    kb.signature.concepts.insert(classes.back());
  }
  for (int i = 0; i < n_roles; ++i) {
    roles.push_back("r" + std::to_string(i));
    kb.signature.roles.insert(roles.back());
  }
  for (int i = 0; i < n_inds; ++i) {
    inds.push_back("a" + std::to_string(i));
    kb.signature.individuals.insert(inds.back());
  }

  // Budget for names normalization will add (compound heads, nominal
  // classes); keeps the whole thing inside the oracle's class cap.
  int fresh_budget = limits.max_total_classes - n_classes;

  auto atom = [&] { return ConceptExpr::atomic(rng.pick(classes)); };

  int n_strict = (int)rng.range(0, std::max(0, limits.max_strict));
  for (int i = 0; i < n_strict; ++i) {
    int shape = (int)rng.below(100);
    if (shape < 40) {
      kb.strict.push_back({atom(), atom(), {}});
    } else if (shape < 55 && !roles.empty()) {
      kb.strict.push_back(
          {atom(), ConceptExpr::exists(rng.pick(roles), atom()), {}});
    } else if (shape < 70 && !roles.empty()) {
      kb.strict.push_back(
          {ConceptExpr::exists(rng.pick(roles), atom()), atom(), {}});
    } else if (shape < 80) {
      kb.strict.push_back({ConceptExpr::conj(atom(), atom()), atom(), {}});
    } else if (shape < 88) {
      kb.strict.push_back({atom(), ConceptExpr::conj(atom(), atom()), {}});
    } else if (shape < 93) {
      kb.strict.push_back({atom(), ConceptExpr::bot(), {}});
    } else if (!inds.empty() && limits.nominal_percent > 0 &&
               fresh_budget > 0) {
      // Nominal flavor; each distinct individual under a nominal costs one
      // class name.
      const std::string& ind = rng.pick(inds);
      if (rng.percent(50))
        kb.strict.push_back({ConceptExpr::nominal(ind), atom(), {}});
      else
        kb.strict.push_back({atom(), ConceptExpr::nominal(ind), {}});
      --fresh_budget;
    } else {
      kb.strict.push_back({atom(), atom(), {}});
    }
  }

  int n_def = (int)rng.range(0, std::max(0, limits.max_defeasible));
  if (n_def > 0) {
    int n_dist = (int)rng.range(1, std::min((int)classes.size(), 3));
    std::vector<std::string> dist;
    for (int i = 0; i < n_dist; ++i) {
      const std::string& c = rng.pick(classes);
      if (std::find(dist.begin(), dist.end(), c) == dist.end())
        dist.push_back(c);
    }
    if (rng.percent(limits.spec_chain_percent) && dist.size() >= 2)
      kb.strict.push_back({ConceptExpr::atomic(dist[0]),
                           ConceptExpr::atomic(dist[1]),
                           {}});
    for (int i = 0; i < n_def; ++i) {
      WeightedInclusion d;
      d.subject = rng.pick(dist);
      int shape = (int)rng.below(100);
      if (shape < 55 || fresh_budget <= 0) {
        d.head = atom();
      } else if (shape < 85 && !roles.empty()) {
        d.head = ConceptExpr::exists(rng.pick(roles), atom());
        --fresh_budget;
      } else {
        d.head = ConceptExpr::conj(atom(), atom());
        --fresh_budget;
      }
      d.weight = rng.range(limits.weight_min, limits.weight_max);
      kb.defeasible.push_back(std::move(d));
    }
  }

  int n_assert = inds.empty() ? 0 : (int)rng.range(0, 2);
  for (int i = 0; i < n_assert; ++i) {
    if (!roles.empty() && rng.percent(40))
      kb.abox.push_back(
          RoleAssertion{rng.pick(roles), rng.pick(inds), rng.pick(inds), {}});
    else
      kb.abox.push_back(ConceptAssertion{atom(), rng.pick(inds), {}});
  }

  kb.distinguished = distinguished_of(kb.defeasible);
  return kb;
}

Query gen_random_query(std::uint64_t seed, const KnowledgeBase& kb,
                       bool allow_compound) {
  Rng rng(seed);
  std::vector<std::string> classes(kb.signature.concepts.begin(),
                                   kb.signature.concepts.end());
  std::vector<std::string> roles(kb.signature.roles.begin(),
                                 kb.signature.roles.end());
  auto atom = [&] { return ConceptExpr::atomic(rng.pick(classes)); };

  Query q;
  q.typicality = true;
  // Bias subjects toward distinguished concepts, where the preference
  // machinery actually engages.
  if (!kb.distinguished.empty() && rng.percent(70))
    q.subject = ConceptExpr::atomic(
        kb.distinguished[rng.below(kb.distinguished.size())]);
  else if (allow_compound && classes.size() >= 2 && rng.percent(30))
    q.subject = ConceptExpr::conj(atom(), atom());
  else
    q.subject = atom();

  if (allow_compound && rng.percent(25)) {
    if (!roles.empty() && rng.percent(50))
      q.object = ConceptExpr::exists(rng.pick(roles), atom());
    else
      q.object = ConceptExpr::conj(atom(), atom());
  } else {
    q.object = atom();
  }
  return q;
}

KnowledgeBase shrink_kb(
    KnowledgeBase kb,
    const std::function<bool(const KnowledgeBase&)>& still_failing) {
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (std::size_t i = 0; i < kb.strict.size(); ++i) {
      KnowledgeBase smaller = kb;
      smaller.strict.erase(smaller.strict.begin() + (long)i);
      if (still_failing(smaller)) {
        kb = std::move(smaller);
        shrunk = true;
        break;
      }
    }
    if (shrunk) continue;
    for (std::size_t i = 0; i < kb.defeasible.size(); ++i) {
      KnowledgeBase smaller = kb;
      smaller.defeasible.erase(smaller.defeasible.begin() + (long)i);
      smaller.distinguished = distinguished_of(smaller.defeasible);
      if (still_failing(smaller)) {
        kb = std::move(smaller);
        shrunk = true;
        break;
      }
    }
    if (shrunk) continue;
    for (std::size_t i = 0; i < kb.abox.size(); ++i) {
      KnowledgeBase smaller = kb;
      smaller.abox.erase(smaller.abox.begin() + (long)i);
      if (still_failing(smaller)) {
        kb = std::move(smaller);
        shrunk = true;
        break;
      }
    }
  }
  return kb;
}

}  // namespace cwm
