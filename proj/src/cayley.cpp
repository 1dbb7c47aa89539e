#include "nks6/cayley.hpp"

#include <cmath>

namespace nks6 {

FiberResiduals fiber_residuals(const SpherePoint& p, const Mat7& j)
{
    FiberResiduals r;
    r.normal = (j * p.vector()).norm();
    r.square = (j * j + tangent_projector(p)).cwiseAbs().maxCoeff();
    r.skew = (j + j.transpose()).cwiseAbs().maxCoeff();
    r.orientation = induced_orientation(p, j);
    return r;
}

Mat76 adapted_frame(const SpherePoint& p, const Mat7& j)
{
    Mat7 span = Mat7::Zero();
    span.col(0) = p.vector();
    int used = 1;
    Mat76 frame;
    for (int k = 0; k < 3; ++k) {
        const auto done = span.leftCols(used);
        Vec7 best = Vec7::Zero();
        double best_norm = -1.0;
        for (int i = 0; i < 7; ++i) {
            Vec7 r = Vec7::Unit(i);
            for (int pass = 0; pass < 2; ++pass) {
                r -= done * (done.transpose() * r);
            }
            const double n = r.norm();
            if (n > best_norm + 1e-12) {
                best_norm = n;
                best = r;
            }
        }
        const Vec7 u = best / best_norm;
        Vec7 ju = j * u;
        // J is orthogonal and skew on T_p, so Ju is already a unit vector
        // orthogonal to the span; re-orthogonalize against rounding only.
        ju -= done * (done.transpose() * ju);
        ju -= u * u.dot(ju);
        ju.normalize();
        frame.col(2 * k) = u;
        frame.col(2 * k + 1) = ju;
        span.col(used++) = u;
        span.col(used++) = ju;
    }
    return frame;
}

int induced_orientation(const SpherePoint& p, const Mat7& j) { return frame_orientation(p, adapted_frame(p, j)); }

FiberOperator CayleyStructure::evaluate(const SpherePoint& x) const
{
    const Mat7& a = rotation_.matrix();
    const Mat7 proj = tangent_projector(x);
    const Mat7 m = a.transpose() * right_mul_operator(a * x.vector()) * a;
    return FiberOperator{x, proj * m * proj};
}

EqualityReport compare_sections(const Section& a, const Section& b, int samples, double tol, Rng& rng)
{
    if (samples < 1) {
        throw InvalidArgument("structures_equal: samples must be >= 1");
    }
    EqualityReport report;
    report.max_difference = -1.0;
    for (int i = 0; i < samples; ++i) {
        const SpherePoint x = random_sphere_point(rng);
        const double d = operator_norm(a(x) - b(x));
        if (d > report.max_difference) {
            report.max_difference = d;
            report.worst = x;
        }
    }
    report.equal = report.max_difference <= tol;
    return report;
}

EqualityReport structures_equal(const CayleyStructure& a, const CayleyStructure& b, int samples, double tol,
                                Rng& rng)
{
    return compare_sections(as_section(a), as_section(b), samples, tol, rng);
}

Vec7 nabla_J(const Section& j, const SpherePoint& p, const Vec7& x, const Vec7& y, double h)
{
    const double ny = y.norm();
    if (ny < 1e-6 || ny > 10.0 || x.norm() > 10.0) {
        throw InvalidArgument("nabla_J: |X|, |Y| must lie in [1e-6, 10]");
    }
    if (x.norm() < 1e-6) {
        throw DegenerateDirection("nabla_J: |X| below 1e-6");
    }
    const Vec7 xt = project_tangent(p, x).vector;
    const Vec7 yt = project_tangent(p, y).vector;
    const Mat7 dj = levi_civita_derivative(j, p, xt, h);
    return dj * yt;
}

NearlyKahlerReport is_nearly_kahler(const Section& j, int samples, double h, double tol, Rng& rng)
{
    if (samples < 1) {
        throw InvalidArgument("is_nearly_kahler: samples must be >= 1");
    }
    NearlyKahlerReport report;
    report.samples = samples;
    for (int i = 0; i < samples; ++i) {
        const SpherePoint p = random_sphere_point(rng);
        const Vec7 x = random_tangent(p, rng);
        const Vec7 y = random_tangent(p, rng);
        const Mat7 djx = levi_civita_derivative(j, p, x, h);
        const Mat7 djy = levi_civita_derivative(j, p, y, h);
        report.max_residual = std::max(report.max_residual, (djx * x).norm());
        report.strictness_witness = std::max(report.strictness_witness, (djx * y).norm());
        report.max_skew_residual = std::max(report.max_skew_residual, (djx * y + djy * x).norm());
    }
    report.pass = report.max_residual <= tol;
    return report;
}

NearlyKahlerReport is_nearly_kahler(const CayleyStructure& s, int samples, double h, double tol, Rng& rng)
{
    return is_nearly_kahler(as_section(s), samples, h, tol, rng);
}

} // namespace nks6
