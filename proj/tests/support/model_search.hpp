#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cwm/normalize.hpp"

namespace cwm::test {

// Exhaustive interpretation search over tiny domains, used as an independent
// semantic check of the saturation engine. Class extensions are bitmasks
// over the domain, role extensions bitmasks over domain pairs.
struct SmallModel {
  int domain = 1;
  std::vector<std::uint32_t> class_ext;  // [class index]; index 0 is Top
  std::vector<std::uint64_t> role_ext;   // [role index], bit x*domain+y
  std::vector<int> ind_val;              // [individual index]

  bool in_class(int element, std::size_t cls) const {
    return (class_ext[cls] >> element) & 1u;
  }
  bool related(int x, std::size_t role, int y) const {
    return (role_ext[role] >> (x * domain + y)) & 1u;
  }
};

// Name lookups for a normalized KB; Top is class index 0.
struct ModelSpace {
  explicit ModelSpace(const NormalizedKB& nkb);
  const NormalizedKB& nkb;
  std::vector<std::string> classes;  // [0] = "Top"
  std::size_t class_index(const std::string& name) const;
  std::size_t role_index(const std::string& name) const;
  std::size_t ind_index(const std::string& name) const;
  bool satisfies(const SmallModel& m) const;
};

// Invokes fn on every model of nkb with 1..max_domain elements; stops early
// when fn returns false. Returns false iff stopped early.
bool for_each_model(const ModelSpace& space, int max_domain,
                    const std::function<bool(const SmallModel&)>& fn);

// True iff no model refutes individual : cls (classical entailment up to the
// domain bound, exact for these test sizes by the finite model property).
bool search_entails_instance(const ModelSpace& space, int max_domain,
                             const std::string& individual,
                             const std::string& cls);

// True iff no model has an element in sub but not in sup.
bool search_entails_subsumption(const ModelSpace& space, int max_domain,
                                const std::string& sub, const std::string& sup);

// True iff some model of the KB exists at all within the bound.
bool search_has_model(const ModelSpace& space, int max_domain);

}  // namespace cwm::test
