#pragma once

// JSON encodings shared by the library and the command-line tool.
//
//   algebra  {"blocks":[2,3], "label":"M2+M3", "orientation":[1,0]}
//   element  {"blocks":[ [[ [re,im], ... ], ...], ... ]}   row-major per block
//   context  {"atoms":[element, ...]}  or  {"generators":[element, ...]}
//   map      {"kind":"identity"} | {"kind":"ad_u","u":element}
//            | {"kind":"transpose","blocks":[0,1]} | {"kind":"permute_blocks","perm":[1,0]}
//            | {"kind":"matrix","basis_images":[element, ...]}
//            | {"kind":"compose","of":[outer, ..., inner]}
//            optionally with "codomain": algebra.
//
// Malformed input raises a parse error naming the offending path.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vna/algebra.hpp"
#include "vna/config.hpp"
#include "vna/contexts.hpp"
#include "vna/derivations.hpp"
#include "vna/jordan_map.hpp"
#include "vna/morphisms.hpp"
#include "vna/presheaf.hpp"

namespace vna {

using Json = nlohmann::json;

/// Reads a file and parses it; parse error with the file name on failure.
Json load_json_file(const std::string& path);

FdAlgebra algebra_from_json(const Json& j);
Json algebra_to_json(const FdAlgebra& m);
/// The "orientation" entry (array of 0/1 per block, or an integer bitmask);
/// the unit when absent.
CentralProjection orientation_from_json(const Json& j, const FdAlgebra& m);

Element element_from_json(const Json& j, const FdAlgebra& m);
Json element_to_json(const Element& a);

CentralProjection mask_from_json(const Json& j, const FdAlgebra& m);
Json mask_to_json(const CentralProjection& c);

Context context_from_json(const Json& j, const FdAlgebra& m, double tol = 1e-9);
Json context_to_json(const Context& v);

/// A list of contexts, or {"seeds":[...]}.
std::vector<Context> seeds_from_json(const Json& j, const FdAlgebra& m, double tol = 1e-9);

/// The map together with the codomain's orientation.
struct ParsedMap {
  JordanMap map;
  CentralProjection codomain_orientation;
};
ParsedMap map_from_json(const Json& j, const FdAlgebra& domain, double tol = 1e-9);

Json config_to_json(const SessionConfig& c);

Json poset_to_json(const ContextPoset& p, bool with_atoms = true);
Json presheaf_to_json(const PresheafFragment& p, bool with_atoms = true);
Json morphism_to_json(const PresheafMorphism& m);

Json check_to_json(const CheckResult& r);
Json report_to_json(const OrientedMapReport& r);
Json classify_to_json(const ClassifyResult& r);

}  // namespace vna
