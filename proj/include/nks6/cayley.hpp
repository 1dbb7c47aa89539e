#pragma once

#include "nks6/octonion.hpp"
#include "nks6/sphere.hpp"

#include <functional>

namespace nks6 {

/// An almost complex structure on one tangent space, stored as a 7x7 matrix
/// that vanishes on the normal line.
struct FiberOperator
{
    SpherePoint base;
    Mat7 matrix;
};

struct FiberResiduals
{
    double normal = 0.0;  ///< |J p|
    double square = 0.0;  ///< max |J^2 + P|
    double skew = 0.0;    ///< max |J + J^T|
    int orientation = 0;  ///< +1 standard, -1 opposite
};

FiberResiduals fiber_residuals(const SpherePoint& p, const Mat7& j);

/// Orthonormal frame (u1, J u1, u2, J u2, u3, J u3) of T_pS^6. Each u_k is the
/// basis vector e_i with the largest residual after projecting out p and the
/// vectors chosen so far.
Mat76 adapted_frame(const SpherePoint& p, const Mat7& j);

/// Orientation J induces on T_pS^6, as the sign of det[p, adapted frame].
int induced_orientation(const SpherePoint& p, const Mat7& j);

/// x -> A^{-1} R_{A(x)} A on T_xS^6.
class CayleyStructure
{
public:
    CayleyStructure() = default;
    explicit CayleyStructure(const Rotation7& rotation) : rotation_(rotation) {}

    const Rotation7& rotation() const { return rotation_; }

    FiberOperator evaluate(const SpherePoint& x) const;
    Mat7 operator()(const SpherePoint& x) const { return evaluate(x).matrix; }

private:
    Rotation7 rotation_;
};

inline FiberOperator evaluate(const CayleyStructure& s, const SpherePoint& x) { return s.evaluate(x); }

/// Any almost complex structure on S^6, as a field of fiber matrices.
using Section = std::function<Mat7(const SpherePoint&)>;

inline Section as_section(const CayleyStructure& s)
{
    return [s](const SpherePoint& x) { return s.evaluate(x).matrix; };
}

struct EqualityReport
{
    bool equal = false;
    double max_difference = 0.0;  ///< largest operator-norm difference
    SpherePoint worst;            ///< where it occurs
};

/// Compares two sections at `samples` random points by the operator norm of
/// the difference of their fiber matrices.
EqualityReport compare_sections(const Section& a, const Section& b, int samples, double tol, Rng& rng);

EqualityReport structures_equal(const CayleyStructure& a, const CayleyStructure& b, int samples, double tol,
                                Rng& rng);

/// (nabla_X J) Y with Y extended by parallel transport along the geodesic in
/// direction X, so the formula reduces to the transported derivative of J.
Vec7 nabla_J(const Section& j, const SpherePoint& p, const Vec7& x, const Vec7& y, double h = 1e-4);

struct NearlyKahlerReport
{
    int samples = 0;
    double max_residual = 0.0;       ///< max |(nabla_X J) X|
    double strictness_witness = 0.0; ///< max |(nabla_X J) Y| over mixed pairs
    double max_skew_residual = 0.0;  ///< max |(nabla_X J) Y + (nabla_Y J) X|
    bool pass = false;               ///< max_residual <= tol
};

NearlyKahlerReport is_nearly_kahler(const Section& j, int samples, double h, double tol, Rng& rng);
NearlyKahlerReport is_nearly_kahler(const CayleyStructure& s, int samples, double h, double tol, Rng& rng);

} // namespace nks6
