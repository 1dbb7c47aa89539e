#include "nks6/sphere.hpp"

#include <cmath>

namespace nks6 {

SpherePoint::SpherePoint(const Vec7& v)
{
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw InvalidArgument("sphere point needs a finite nonzero vector");
    }
    // Leave vectors that are already unit to rounding untouched, so stored
    // points reload bit for bit.
    v_ = std::abs(n - 1.0) <= 4e-16 ? v : Vec7(v / n);
}

TangentVector::TangentVector(const SpherePoint& p, const Vec7& v)
    : base(p), vector(v - v.dot(p.vector()) * p.vector())
{
}

Mat7 tangent_projector(const SpherePoint& p)
{
    return Mat7::Identity() - p.vector() * p.vector().transpose();
}

TangentVector project_tangent(const SpherePoint& p, const Vec7& v) { return TangentVector(p, v); }

FrameAtPoint tangent_frame(const SpherePoint& p)
{
    Eigen::Matrix<double, 7, 7> span = Eigen::Matrix<double, 7, 7>::Zero();
    span.col(0) = p.vector();
    Mat76 cols;
    for (int k = 0; k < 6; ++k) {
        const auto done = span.leftCols(k + 1);
        Vec7 best = Vec7::Zero();
        double best_norm = -1.0;
        for (int i = 0; i < 7; ++i) {
            Vec7 r = Vec7::Unit(i);
            // Two passes for numerical orthogonality.
            for (int pass = 0; pass < 2; ++pass) {
                r -= done * (done.transpose() * r);
            }
            const double n = r.norm();
            if (n > best_norm + 1e-12) {
                best_norm = n;
                best = r;
            }
        }
        cols.col(k) = best / best_norm;
        span.col(k + 1) = cols.col(k);
    }
    if (frame_orientation(p, cols) < 0) {
        cols.col(5) *= -1.0;
    }
    return FrameAtPoint{p, cols};
}

int frame_orientation(const SpherePoint& p, const Mat76& columns)
{
    Mat7 m;
    m.col(0) = p.vector();
    m.rightCols<6>() = columns;
    return m.determinant() >= 0.0 ? 1 : -1;
}

double geodesic_distance(const SpherePoint& p, const SpherePoint& q)
{
    // atan2 form stays accurate near 0 and pi.
    const double s = (p.vector() - q.vector()).norm();
    const double c = (p.vector() + q.vector()).norm();
    return 2.0 * std::atan2(s, c);
}

SpherePoint geodesic(const SpherePoint& p, const Vec7& x, double t)
{
    const double n = detail::check_direction(x);
    return SpherePoint(std::cos(t * n) * p.vector() + std::sin(t * n) * (x / n));
}

Mat7 parallel_transport(const SpherePoint& p, const SpherePoint& q)
{
    const double c = p.vector().dot(q.vector());
    if (c < -1.0 + 1e-10) {
        throw AntipodalTransport("points are (nearly) antipodal");
    }
    const Mat7 k = q.vector() * p.vector().transpose() - p.vector() * q.vector().transpose();
    return Mat7::Identity() + k + (k * k) / (1.0 + c);
}

SpherePoint random_sphere_point(Rng& rng) { return SpherePoint(gaussian_vec7(rng)); }

Vec7 random_tangent(const SpherePoint& p, Rng& rng)
{
    const Mat76 frame = tangent_frame(p).columns;
    std::normal_distribution<double> n(0.0, 1.0);
    Vec6 c;
    for (int i = 0; i < 6; ++i) {
        c[i] = n(rng);
    }
    return frame * c;
}

StereographicChart::StereographicChart(const SpherePoint& pole)
    : pole_(pole), basis_(tangent_frame(pole).columns)
{
}

Vec6 StereographicChart::forward(const SpherePoint& x) const
{
    if ((x.vector() - pole_.vector()).norm() < 1e-6) {
        throw NearPole("point within 1e-6 of the chart pole");
    }
    return basis_.transpose() * x.vector() / (1.0 - x.vector().dot(pole_.vector()));
}

SpherePoint StereographicChart::inverse(const Vec6& u) const
{
    const double s = u.squaredNorm();
    const Vec7 x = (2.0 * basis_ * u + (s - 1.0) * pole_.vector()) / (s + 1.0);
    if ((x - pole_.vector()).norm() < 1e-6) {
        throw NearPole("chart coordinates map within 1e-6 of the pole");
    }
    return SpherePoint(x);
}

Mat76 StereographicChart::jacobian(const Vec6& u) const
{
    const double s = u.squaredNorm();
    const Vec7 numer = 2.0 * basis_ * u + (s - 1.0) * pole_.vector();
    Mat76 jac;
    for (int j = 0; j < 6; ++j) {
        jac.col(j) = (2.0 * basis_.col(j) + 2.0 * u[j] * pole_.vector()) / (s + 1.0) -
                     numer * (2.0 * u[j]) / ((s + 1.0) * (s + 1.0));
    }
    return jac;
}

AlternatingForm horizontal_part(const AlternatingForm& a, const SpherePoint& p)
{
    return pullback(a, tangent_projector(p));
}

AlternatingForm exterior_derivative_on_sphere(const FormField& form, const SpherePoint& p,
                                              const StereographicChart& chart, double h)
{
    if (!(h > 0.0)) {
        throw InvalidArgument("step must be positive");
    }
    const Vec6 u0 = chart.forward(p);
    AlternatingForm d;
    for (int j = 0; j < 6; ++j) {
        const Vec6 up = u0 + h * Vec6::Unit(j);
        const Vec6 um = u0 - h * Vec6::Unit(j);
        const AlternatingForm fp = pullback(form(chart.inverse(up)), chart.jacobian(up));
        const AlternatingForm fm = pullback(form(chart.inverse(um)), chart.jacobian(um));
        const AlternatingForm partial = (fp - fm) * (1.0 / (2.0 * h));
        const AlternatingForm term = wedge(AlternatingForm::basis(6, {j}), partial);
        if (j == 0) {
            d = term;
        } else {
            d += term;
        }
    }
    const Mat76 jac = chart.jacobian(u0);
    // Left inverse of the Jacobian; it annihilates the normal direction.
    const Mat67 to_chart = (jac.transpose() * jac).inverse() * jac.transpose();
    return pullback(d, to_chart);
}

AlternatingForm exterior_derivative_on_sphere(const FormField& form, const SpherePoint& p, double h)
{
    return exterior_derivative_on_sphere(form, p, StereographicChart(p.antipode()), h);
}

} // namespace nks6
