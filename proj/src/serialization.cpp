#include "nks6/serialization.hpp"

#include "nks6/errors.hpp"

#include <string>

namespace nks6 {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError(std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

std::vector<double> numbers(const Json& j, std::size_t expected, const char* what)
{
    if (!j.is_array() || j.size() != expected) {
        throw SchemaError(std::string(what) + ": expected an array of " + std::to_string(expected) + " numbers");
    }
    std::vector<double> out;
    out.reserve(expected);
    for (const auto& x : j) {
        if (!x.is_number()) {
            throw SchemaError(std::string(what) + ": non-numeric entry");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

void expect_convention(const Json& j, const char* expected)
{
    const Json& c = field(j, "convention");
    if (!c.is_string()) {
        throw SchemaError("convention must be a string");
    }
    if (c.get<std::string>() != expected) {
        throw InvalidArgument("convention mismatch: got '" + c.get<std::string>() + "', expected '" + expected + "'");
    }
}

} // namespace

Json matrix_to_json(const Mat7& m)
{
    Json out = Json::array();
    for (int r = 0; r < 7; ++r) {
        for (int c = 0; c < 7; ++c) {
            out.push_back(m(r, c));
        }
    }
    return out;
}

Mat7 matrix_from_json(const Json& j)
{
    const auto v = numbers(j, 49, "matrix");
    Mat7 m;
    for (int r = 0; r < 7; ++r) {
        for (int c = 0; c < 7; ++c) {
            m(r, c) = v[static_cast<std::size_t>(7 * r + c)];
        }
    }
    return m;
}

Json vector_to_json(const Eigen::VectorXd& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(v(i));
    }
    return out;
}

Vec7 vec7_from_json(const Json& j)
{
    const auto v = numbers(j, 7, "point");
    return Eigen::Map<const Vec7>(v.data());
}

Json to_json(const CayleyStructure& s)
{
    return Json{{"convention", kOctonionConvention}, {"rotation", matrix_to_json(s.rotation().matrix())}};
}

CayleyStructure structure_from_json(const Json& j, double tol)
{
    expect_convention(j, kOctonionConvention);
    return CayleyStructure(Rotation7(matrix_from_json(field(j, "rotation")), tol));
}

Json to_json(const TwistorPoint& tp)
{
    return Json{{"point", vector_to_json(tp.point().vector())}, {"operator", matrix_to_json(tp.op())}};
}

TwistorPoint twistor_point_from_json(const Json& j, double tol)
{
    const Vec7 v = vec7_from_json(field(j, "point"));
    if (std::abs(v.norm() - 1.0) > tol) {
        throw InvalidArgument("point is not a unit vector");
    }
    return TwistorPoint(SpherePoint(v), matrix_from_json(field(j, "operator")), tol);
}

Json to_json(const StructureFamily& f)
{
    return Json{{"convention", kFamilyConvention},
                {"base", to_json(f.base())},
                {"lift", to_json(CayleyStructure(f.lift()))}};
}

StructureFamily family_from_json(const Json& j, double tol)
{
    expect_convention(j, kFamilyConvention);
    StructureFamily family(twistor_point_from_json(field(j, "base"), tol));
    const CayleyStructure stored = structure_from_json(field(j, "lift"), tol);
    const double gap = (stored.rotation().matrix() - family.lift().matrix()).cwiseAbs().maxCoeff();
    if (gap > tol) {
        throw InvalidArgument("stored lift does not match the lift of the base point");
    }
    return family;
}

Json to_json(const AlternatingForm& f)
{
    const auto c = f.coefficients();
    return Json{{"dim", f.dim()}, {"degree", f.degree()}, {"coefficients", std::vector<double>(c.begin(), c.end())}};
}

AlternatingForm form_from_json(const Json& j)
{
    const Json& d = field(j, "dim");
    const Json& k = field(j, "degree");
    if (!d.is_number_integer() || !k.is_number_integer()) {
        throw SchemaError("dim and degree must be integers");
    }
    const int dim = d.get<int>();
    const int degree = k.get<int>();
    if (dim < 0 || dim > kMaxFormDim || degree < 0 || degree > dim) {
        throw SchemaError("dim or degree out of range");
    }
    const std::size_t n = index_masks(dim, degree).size();
    return AlternatingForm(dim, degree, numbers(field(j, "coefficients"), n, "coefficients"));
}

} // namespace nks6
