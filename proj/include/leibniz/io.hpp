#pragma once

#include <json.hpp>
#include <string>

#include "leibniz/algebra.hpp"
#include "leibniz/cohomology.hpp"
#include "leibniz/matrix.hpp"

namespace leibniz {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "leibniz-forge/1";

Json scalar_to_json(const Scalar& s);
/// Accepts "p/q" strings and JSON integers.
Scalar scalar_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json vector_to_json(const Vector& v);

/// {"schema", "dim", "labels", "brackets": [{"left", "right", "value": {"k": "p/q"}}]} with
/// 1-based indices.
Json algebra_to_json(const Algebra& a);
/// Throws ParseError on malformed documents, out-of-range indices or duplicate pairs.
Algebra algebra_from_json(const Json& j);
Algebra algebra_from_string(const std::string& text);

/// Multiplication table as lines "[e1,f1] = e2 + f3".
std::string algebra_to_text(const Algebra& a);
std::string element_to_text(const Algebra& a, const Element& x);

/// Value on every pair where the cochain is nonzero, keyed by "left,right" labels.
Json cochain_to_json(const Algebra& a, const Cochain2& phi);
Json cohomology_to_json(const Algebra& a, const CohomologyReport& r, bool include_witness);

}  // namespace leibniz
