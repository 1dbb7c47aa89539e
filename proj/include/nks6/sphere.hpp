#pragma once

#include "nks6/errors.hpp"
#include "nks6/forms.hpp"
#include "nks6/linalg.hpp"

#include <concepts>
#include <functional>
#include <type_traits>

namespace nks6 {

/// Unit vector of Im O. Renormalized on construction unless already unit to
/// rounding.
class SpherePoint
{
public:
    SpherePoint() : v_(Vec7::Unit(0)) {}
    explicit SpherePoint(const Vec7& v);

    const Vec7& vector() const { return v_; }
    SpherePoint antipode() const { return SpherePoint(-v_); }

private:
    Vec7 v_;
};

/// Tangent vector at a sphere point; the ambient vector is projected onto the
/// tangent space when the object is built.
struct TangentVector
{
    TangentVector(const SpherePoint& p, const Vec7& v);

    SpherePoint base;
    Vec7 vector;
};

/// Six orthonormal tangent vectors (as columns) with (p, u1, ..., u6)
/// positively oriented in R^7.
struct FrameAtPoint
{
    SpherePoint base;
    Mat76 columns;
};

/// Orthogonal projection of R^7 onto the tangent space at p.
Mat7 tangent_projector(const SpherePoint& p);
TangentVector project_tangent(const SpherePoint& p, const Vec7& v);

/// Deterministic positively oriented orthonormal frame at p, built by greedy
/// Gram-Schmidt over e1..e7.
FrameAtPoint tangent_frame(const SpherePoint& p);

/// Sign of det[p, columns]; +1 for the standard orientation.
int frame_orientation(const SpherePoint& p, const Mat76& columns);

double geodesic_distance(const SpherePoint& p, const SpherePoint& q);

/// t -> cos(t|X|) p + sin(t|X|) X/|X|. Throws DegenerateDirection if |X| < 1e-13.
SpherePoint geodesic(const SpherePoint& p, const Vec7& x, double t);

/// Rotation in span(p, q) carrying p to q and fixing the orthogonal
/// complement; parallel transport along the shortest geodesic. Throws
/// AntipodalTransport when <p, q> < -1 + 1e-10.
Mat7 parallel_transport(const SpherePoint& p, const SpherePoint& q);

SpherePoint random_sphere_point(Rng& rng);
/// Gaussian tangent vector at p (coefficients N(0,1) in an orthonormal frame).
Vec7 random_tangent(const SpherePoint& p, Rng& rng);

enum class Extrapolation { None, Richardson };

template <typename F>
concept VectorFieldLike = std::invocable<const F&, const SpherePoint&> &&
                          std::same_as<std::invoke_result_t<const F&, const SpherePoint&>, Vec7>;

template <typename F>
concept OperatorFieldLike = std::invocable<const F&, const SpherePoint&> &&
                            std::same_as<std::invoke_result_t<const F&, const SpherePoint&>, Mat7>;

namespace detail {

inline double check_direction(const Vec7& x)
{
    const double n = x.norm();
    if (n < 1e-13) {
        throw DegenerateDirection("direction norm below 1e-13");
    }
    return n;
}

template <typename F>
auto central_difference(const F& f, const SpherePoint& p, const Vec7& x, double h)
{
    const SpherePoint fwd = geodesic(p, x, h);
    const SpherePoint bwd = geodesic(p, x, -h);
    if constexpr (VectorFieldLike<F>) {
        // Ambient derivative; the caller projects.
        return Vec7((f(fwd) - f(bwd)) / (2.0 * h));
    } else {
        // Transport operators back to p before differencing.
        const Mat7 tf = parallel_transport(p, fwd);
        const Mat7 tb = parallel_transport(p, bwd);
        const Mat7 back_f = tf.transpose() * f(fwd) * tf;
        const Mat7 back_b = tb.transpose() * f(bwd) * tb;
        return Mat7((back_f - back_b) / (2.0 * h));
    }
}

} // namespace detail

/**
 * Covariant derivative of the round sphere's Levi-Civita connection along X,
 * by central differences along the great circle through p with initial
 * velocity X. Vector fields are differentiated in R^7 and projected onto
 * T_pS^6. Operator fields are conjugated back to p by parallel transport
 * before differencing and the result is compressed to T_pS^6. O(h^2), or
 * O(h^4) with Richardson extrapolation.
 */
template <typename F>
    requires VectorFieldLike<F> || OperatorFieldLike<F>
auto levi_civita_derivative(const F& field, const SpherePoint& p, const Vec7& x, double h = 1e-4,
                            Extrapolation extrapolation = Extrapolation::None)
{
    detail::check_direction(x);
    if (!(h > 0.0) || h > 1e-3) {
        throw InvalidArgument("step must lie in (0, 1e-3]");
    }
    auto raw = detail::central_difference(field, p, x, h);
    if (extrapolation == Extrapolation::Richardson) {
        const auto half = detail::central_difference(field, p, x, h / 2.0);
        raw = (4.0 * half - raw) / 3.0;
    }
    const Mat7 proj = tangent_projector(p);
    if constexpr (VectorFieldLike<F>) {
        return Vec7(proj * raw);
    } else {
        return Mat7(proj * raw * proj);
    }
}

/// Stereographic projection from `pole` onto the orthogonal hyperplane,
/// expressed in a fixed orthonormal basis of that hyperplane. The antipode of
/// the pole maps to the origin.
class StereographicChart
{
public:
    explicit StereographicChart(const SpherePoint& pole);

    const SpherePoint& pole() const { return pole_; }
    /// Columns: orthonormal basis of pole^perp used for chart coordinates.
    const Mat76& basis() const { return basis_; }

    /// Throws NearPole within 1e-6 of the pole.
    Vec6 forward(const SpherePoint& x) const;
    /// Throws NearPole if the image lies within 1e-6 of the pole.
    SpherePoint inverse(const Vec6& u) const;
    /// d(inverse)/du, columns span T_{inverse(u)}S^6.
    Mat76 jacobian(const Vec6& u) const;

private:
    SpherePoint pole_;
    Mat76 basis_;
};

/// A k-form along the sphere, given at each point as a form on R^7 whose
/// restriction to the tangent space is the value that matters.
using FormField = std::function<AlternatingForm(const SpherePoint&)>;

/**
 * Exterior derivative of a form field at p: pull back to the chart, take
 * central-difference partials of the coefficient functions, antisymmetrize,
 * and push forward to T_pS^6. The result is a (k+1)-form on R^7 that vanishes
 * whenever an argument is normal to the sphere.
 */
AlternatingForm exterior_derivative_on_sphere(const FormField& form, const SpherePoint& p,
                                              const StereographicChart& chart, double h = 1e-4);

/// Uses the chart whose pole is -p, so p sits at the chart origin.
AlternatingForm exterior_derivative_on_sphere(const FormField& form, const SpherePoint& p, double h = 1e-4);

/// A form on R^7 with every normal direction at p removed: a o (P x ... x P).
AlternatingForm horizontal_part(const AlternatingForm& a, const SpherePoint& p);

} // namespace nks6
