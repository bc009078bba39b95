#include "cwm/json_io.hpp"

#include <json.hpp>
#include <set>

namespace cwm {

std::string verdict_to_json(const EntailmentVerdict& v, bool pretty) {
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["query"] = v.query.to_string();
  doc["entailed"] = v.entailed;
  doc["vacuous"] = v.vacuous;
  doc["preferred_types"] = nlohmann::json::array();
  for (const auto& t : v.preferred) {
    nlohmann::json jt;
    std::set<std::string> names;  // display-collapses coextensive fresh names
    t.concepts.for_each(
        [&](ClassId c) { names.insert(v.kb->display_name(c)); });
    jt["concepts"] = names;
    nlohmann::json weights;
    const auto& dist = v.kb->source().distinguished;
    for (std::size_t i = 0; i < dist.size(); ++i) {
      if (t.weights[i].is_finite())
        weights[dist[i]] = t.weights[i].value();
      else
        weights[dist[i]] = "-inf";
    }
    jt["weights"] = std::move(weights);
    doc["preferred_types"].push_back(std::move(jt));
  }
  doc["stats"] = {{"candidates", v.candidate_count},
                  {"preferred", v.preferred.size()}};
  return pretty ? doc.dump(2) : doc.dump();
}

}  // namespace cwm
