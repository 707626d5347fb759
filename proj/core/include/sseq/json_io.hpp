#pragma once

// JSON documents for matrices, filtered complexes, algebras, derivations,
// pages and certificates. Rationals are written as strings "a/b".

#include <map>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "sseq/exactla.hpp"
#include "sseq/filtered.hpp"
#include "sseq/geometry.hpp"
#include "sseq/lefschetz.hpp"
#include "sseq/multalg.hpp"
#include "sseq/spectral.hpp"

namespace sseq {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

/// Reads and parses a file; throws ParseError with the byte offset.
json load_json(const std::string& path);
json parse_json_text(const std::string& text, const std::string& source = "<input>");

Scalar scalar_from_json(const json& j, const std::string& where);

/// Row-major array of rows; "[]" is the zero matrix of the expected shape.
Matrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& where);
ordered_json matrix_to_json(const Matrix& m);

FilteredComplex filtered_complex_from_json(const json& j);
ordered_json filtered_complex_to_json(const FilteredComplex& fk);

/// Dense array or sparse {name-or-index: coefficient} object.
Vector algebra_vector_from_json(const json& j, const BigradedAlgebra& a, const std::string& where);
ordered_json algebra_vector_to_json(const Vector& v, const BigradedAlgebra& a);

/// {"n", "name", "basis", "products", "unit", "omega", "integral", "roles"}.
VarietyModel model_from_json(const json& j);
ordered_json model_to_json(const VarietyModel& m);

/// {"bidegree": [r, 1−r], "derivation": {basis: vector}}; absent images are zero.
Derivation derivation_from_json(const json& j, std::shared_ptr<const BigradedAlgebra> a);
ordered_json derivation_to_json(const Derivation& d);

/// {"alpha": {generator: vector}}.
ObstructionDatum alpha_from_json(const json& j, const VarietyModel& m, const Scalar& scale);

ordered_json dims_to_json(const std::map<Bidegree, std::size_t>& dims);
ordered_json certificate_to_json(const Certificate& c, const BigradedAlgebra& a);

}  // namespace sseq
