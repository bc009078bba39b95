#include "cwm/preference.hpp"

#include <algorithm>
#include <map>

#include "cwm/errors.hpp"

namespace cwm {

ExtendedWeight weight_of(const ClassSet& concepts, std::size_t dist_index,
                         const CompiledKB& kb) {
  if (!concepts.test(kb.distinguished()[dist_index]))
    return ExtendedWeight::neg_infinity();
  std::int64_t sum = 0;
  for (const auto& [head, w] : kb.typicality()[dist_index])
    if (concepts.test(head)) sum = checked_add(sum, w);
  return ExtendedWeight::finite(sum);
}

WeightVector weight_vector_of(const ClassSet& concepts, const CompiledKB& kb) {
  WeightVector out;
  out.reserve(kb.distinguished().size());
  for (std::size_t i = 0; i < kb.distinguished().size(); ++i)
    out.push_back(weight_of(concepts, i, kb));
  return out;
}

bool prefers_global(const WeightVector& x, const WeightVector& y,
                    const SpecificityRelation& spec) {
  bool strictly_better = false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (prefers_cw(x[i], y[i])) {
      strictly_better = true;
      break;
    }
  if (!strictly_better) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!prefers_cw(y[j], x[j])) continue;  // x is at least as good at j
    bool overridden = false;
    for (std::size_t h = 0; h < x.size(); ++h)
      if (spec.more_specific(h, j) && prefers_cw(x[h], y[h])) {
        overridden = true;
        break;
      }
    if (!overridden) return false;
  }
  return true;
}

bool prefers_global(const CandidateType& x, const CandidateType& y,
                    const SpecificityRelation& spec) {
  return prefers_global(x.weights, y.weights, spec);
}

namespace detail {

std::vector<CandidateType> minimal_under(
    const std::vector<CandidateType>& candidates,
    const std::function<bool(const WeightVector&, const WeightVector&)>&
        dominates) {
  // Dominance depends only on the weight vector, so work on distinct vectors.
  std::map<WeightVector, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    groups[candidates[i].weights].push_back(i);
  std::vector<const WeightVector*> vecs;
  vecs.reserve(groups.size());
  for (const auto& [v, _] : groups) vecs.push_back(&v);

  std::size_t n = vecs.size();
  std::vector<std::vector<std::size_t>> better_than(n);  // u -> dominated v
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && dominates(*vecs[u], *vecs[v]))
        better_than[u].push_back(v);

  // The relation must be a strict partial order; a cycle means a definition
  // bug upstream. Iterative three-color DFS.
  std::vector<int> color(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (color[start]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    color[start] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < better_than[node].size()) {
        std::size_t child = better_than[node][next++];
        if (color[child] == 1)
          throw PreferenceCycleError(
              "preference relation contains a dominance cycle");
        if (color[child] == 0) {
          color[child] = 1;
          stack.push_back({child, 0});
        }
      } else {
        color[node] = 2;
        stack.pop_back();
      }
    }
  }

  std::vector<bool> dominated(n, false);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v : better_than[u]) dominated[v] = true;

  std::vector<CandidateType> out;
  std::size_t vi = 0;
  for (const auto& [vec, members] : groups) {
    if (!dominated[vi]) {
      for (std::size_t idx : members) out.push_back(candidates[idx]);
    }
    ++vi;
  }
  if (!candidates.empty() && out.empty())
    throw PreferenceCycleError(
        "no preference-minimal candidate in a nonempty set");
  std::sort(out.begin(), out.end(),
            [](const CandidateType& a, const CandidateType& b) {
              return a.concepts < b.concepts;
            });
  return out;
}

}  // namespace detail

std::vector<CandidateType> minimal_candidates(
    const std::vector<CandidateType>& candidates,
    const SpecificityRelation& spec) {
  return detail::minimal_under(
      candidates, [&spec](const WeightVector& x, const WeightVector& y) {
        return prefers_global(x, y, spec);
      });
}

std::vector<CandidateType> minimal_by_concept(
    const std::vector<CandidateType>& candidates, std::size_t dist_index) {
  return detail::minimal_under(
      candidates,
      [dist_index](const WeightVector& x, const WeightVector& y) {
        return prefers_cw(x[dist_index], y[dist_index]);
      });
}

}  // namespace cwm
