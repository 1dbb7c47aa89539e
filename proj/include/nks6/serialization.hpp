#pragma once

#include "nks6/cayley.hpp"
#include "nks6/forms.hpp"
#include "nks6/twistor.hpp"

#include <json.hpp>

#include <stdexcept>

namespace nks6 {

using Json = nlohmann::json;

/// Structurally malformed document: missing fields, wrong types or lengths.
/// Content that parses but violates a mathematical invariant raises the
/// library's GeometryError instead.
struct SchemaError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

Json matrix_to_json(const Mat7& m);  ///< 49 numbers, row-major
Mat7 matrix_from_json(const Json& j);
Json vector_to_json(const Eigen::VectorXd& v);
Vec7 vec7_from_json(const Json& j);

/// {"convention": "cayley-dickson-v1", "rotation": [49 numbers]}
Json to_json(const CayleyStructure& s);
/// Validates the convention tag and that the rotation lies in SO(7).
CayleyStructure structure_from_json(const Json& j, double tol = 1e-9);

/// {"point": [7], "operator": [49]}
Json to_json(const TwistorPoint& tp);
TwistorPoint twistor_point_from_json(const Json& j, double tol = 1e-9);

/// {"convention": "lambda-left-v1", "base": twistor point, "lift": structure}
Json to_json(const StructureFamily& f);
/// Rebuilds the family from its base and checks the stored lift against it.
StructureFamily family_from_json(const Json& j, double tol = 1e-9);

/// {"dim", "degree", "coefficients": lex-ordered}
Json to_json(const AlternatingForm& f);
AlternatingForm form_from_json(const Json& j);

} // namespace nks6
