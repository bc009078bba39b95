#pragma once

#include <string>

#include "cwm/entailment.hpp"

namespace cwm {

// Result document, schema version 1:
//   {"schema":1, "query":"...", "entailed":bool, "vacuous":bool,
//    "preferred_types":[{"concepts":[...], "weights":{"Emp":30,...}}],
//    "stats":{"candidates":n, "preferred":m}}
// A weight of minus infinity is encoded as the string "-inf".
std::string verdict_to_json(const EntailmentVerdict& verdict, bool pretty);

}  // namespace cwm
