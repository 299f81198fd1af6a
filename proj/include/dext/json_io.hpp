#pragma once
// JSON serialization of exact data. Scalars are written as strings
// ("3", "-1/2") so values round-trip bit-exactly.

#include <json.hpp>

#include "dext/complex.hpp"

namespace dext {

using Json = nlohmann::ordered_json;

Json to_json(const Scalar& s);
Json to_json(const Matrix& m);
// {"dims": {"-1": 2, ...}, "differentials": {"-1": [[...]], ...}}
Json to_json(const CochainComplex& x);

Scalar scalar_from_json(const Json& j);
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);
CochainComplex complex_from_json(const Json& j);

// Recursively sorts object keys so output is byte-stable.
Json sorted(const Json& j);

}  // namespace dext
