#pragma once

// JSON forms. Scalars are written as decimal strings ("3", "-1/2") and read
// from strings or JSON integers. A matrix is a list of rows; its shape is
// always known from the surrounding data, so empty rows need no column count.

#include <json.hpp>

#include "fcalc/cattilde.hpp"
#include "fcalc/fisharp.hpp"

namespace fcalc {

using Json = nlohmann::ordered_json;

Json to_json(const Mat& m);
Mat mat_from_json(const Json& j, const Coeff& c, std::size_t rows, std::size_t cols);

/// {"coeff", "gens", "rels"}
Json to_json(const PresentedModule& m);
PresentedModule module_from_json(const Json& j);
/// {"mat"}
Json to_json(const ModuleMap& f);

/// {"coeff", "N", "levels", "incl", "sym"}
Json to_json(const TruncFIModule& F);
TruncFIModule fi_from_json(const Json& j);
/// The FI schema plus "proj".
Json to_json(const FISharpModule& F);
FISharpModule sharp_from_json(const Json& j);
/// {"coeff", "reps": [{"gens", "rels", "sym"}]}, the k-th entry a rep of Sigma_k.
Json to_json(const SymRepList& reps);
SymRepList reps_from_json(const Json& j);

/// {"cat", "a", "b", "classes": [{"domain", "values"}]}
Json to_json(const TildeHomSet& h);

/// Parses text, rethrowing syntax errors as InputError with their position.
Json parse_json(const std::string& text);

}  // namespace fcalc
