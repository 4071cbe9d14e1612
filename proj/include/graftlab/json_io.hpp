#pragma once

#include "graftlab/categories.hpp"
#include "graftlab/monoid_morse.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace graftlab {

using Json = nlohmann::json;

// Any structural problem with an input document.
struct JsonInputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json read_json_file(const std::string& path);

// Modules: {"name": "A", "generators": [{"name": "a", "degree": 0}, ...]}.
ModuleRef module_from_json(const Json& j);
Json module_to_json(const ModuleRef& m);

// Shared header fields: "ring" ("Z", "Q", "Z/p"), "category" ("bi", "ascending", "descending",
// "bimodule"), "width", "maxLeaves", "maxCells".
struct DocumentHeader {
  Ring ring = Ring::integers();
  Category category;
  IndexBounds bounds;
};
DocumentHeader header_from_json(const Json& doc);
void header_to_json(Json& doc, const Ring& ring, const Category& c, const IndexBounds& b);

// An endpoint carries "module" (or "modules": three of them in the bimodule category) and optionally
// "alphaComponents".
Object object_modules_from_json(const Json& j, const Category& c);

// Components: [{"k": [2,1], "l": [1], "eps": 1, "pos": 0, "entries": [{"in": ["a","b"], "out": ["c"],
// "coeff": 1}, ...]}]. Basis elements are generator names per cell in row-major order, or a basis index.
Family<BoxMap> components_from_json(const Json& arr, const DocumentHeader& h, Object source, Object target, int degree);
Json components_to_json(const Family<BoxMap>& f);

// An object document: header plus endpoint with alphaComponents; alpha has degree -1.
Family<BoxMap> object_from_json(const Json& doc);
Json object_to_json(const Family<BoxMap>& alpha);

// A family document: header, "source", "target", "degree", "components". Endpoints that carry
// alphaComponents also yield their structures.
struct FamilyDocument {
  Family<BoxMap> family;
  std::optional<Family<BoxMap>> source_structure;
  std::optional<Family<BoxMap>> target_structure;
};
FamilyDocument family_from_json(const Json& doc);
Json family_to_json(const Family<BoxMap>& f);

// {"objects": [endpoint, ...], "maps": [{"sigma": [0,1], "components": [...]}, ...]} plus header.
// Faces not listed are absent; check_simplex rejects an incomplete simplex.
Simplex<BoxMap> simplex_from_json(const Json& doc);
Json simplex_to_json(const Simplex<BoxMap>& s);

// {"name": "...", "elements": [...], "table": [[...], ...]}; associativity is not checked here.
FiniteSemigroup semigroup_from_json(const Json& j);
Json semigroup_to_json(const FiniteSemigroup& s);
// {"G": semigroup, "X": [...], "H": semigroup, "left": [[...]], "right": [[...]]}.
ActionTriple triple_from_json(const Json& j);

Json report_to_json(const Report& r);

}  // namespace graftlab
