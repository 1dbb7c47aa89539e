#include "oracles.hpp"

#include <nks6/errors.hpp>
#include <nks6/sphere.hpp>

#include <doctest.h>

using namespace nks6;

TEST_CASE("points are unit; exact unit vectors are kept bit for bit")
{
    Rng rng(1);
    const SpherePoint p(Vec7::Constant(3.0));
    CHECK(p.vector().norm() == doctest::Approx(1.0).epsilon(1e-15));
    const SpherePoint q = random_sphere_point(rng);
    CHECK(SpherePoint(q.vector()).vector() == q.vector());
    CHECK_THROWS_AS(SpherePoint(Vec7::Zero()), InvalidArgument);
    CHECK((p.antipode().vector() + p.vector()).norm() == 0.0);
}

TEST_CASE("tangent frames are orthonormal and positively oriented")
{
    Rng rng(2);
    for (int k = 0; k < 50; ++k) {
        const SpherePoint p = random_sphere_point(rng);
        const FrameAtPoint f = tangent_frame(p);
        CHECK((f.columns.transpose() * f.columns - Mat6::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK((f.columns.transpose() * p.vector()).norm() <= 1e-14);
        Mat7 full;
        full << p.vector(), f.columns;
        CHECK(full.determinant() == doctest::Approx(1.0));
        CHECK(frame_orientation(p, f.columns) == 1);
        Mat76 flipped = f.columns;
        flipped.col(0) *= -1.0;
        CHECK(frame_orientation(p, flipped) == -1);
    }
}

TEST_CASE("projection")
{
    Rng rng(3);
    const SpherePoint p = random_sphere_point(rng);
    const Vec7 v = gaussian_vec7(rng);
    const Mat7 proj = tangent_projector(p);
    CHECK((proj * proj - proj).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(std::abs(project_tangent(p, v).vector.dot(p.vector())) <= 1e-15);
}

TEST_CASE("geodesics and distance")
{
    Rng rng(4);
    const SpherePoint p = random_sphere_point(rng);
    const Vec7 x = random_tangent(p, rng);
    const double t = 0.7 / x.norm();
    const SpherePoint q = geodesic(p, x, t);
    CHECK(geodesic_distance(p, q) == doctest::Approx(0.7).epsilon(1e-13));
    CHECK(geodesic_distance(p, p.antipode()) == doctest::Approx(M_PI));
    CHECK(geodesic_distance(p, p) == 0.0);
    CHECK_THROWS_AS(geodesic(p, Vec7::Zero(), 1.0), DegenerateDirection);
}

TEST_CASE("parallel transport")
{
    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
        const SpherePoint p = random_sphere_point(rng);
        const SpherePoint q = random_sphere_point(rng);
        const Mat7 r = parallel_transport(p, q);
        CHECK((r.transpose() * r - Mat7::Identity()).cwiseAbs().maxCoeff() <= 1e-13);
        CHECK((r * p.vector() - q.vector()).norm() <= 1e-13);
        const Vec7 y = random_tangent(p, rng);
        CHECK(std::abs((r * y).dot(q.vector())) <= 1e-13);
        // Transport along a geodesic preserves the angle with the velocity.
        const Vec7 x = q.vector() - q.vector().dot(p.vector()) * p.vector();
        const Vec7 xq = p.vector() - p.vector().dot(q.vector()) * q.vector();
        CHECK((r * x).normalized().dot(-xq.normalized()) == doctest::Approx(1.0));
    }
    const SpherePoint p = random_sphere_point(rng);
    CHECK_THROWS_AS(parallel_transport(p, p.antipode()), AntipodalTransport);
    CHECK((parallel_transport(p, p) - Mat7::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("stereographic chart")
{
    Rng rng(6);
    const SpherePoint pole = random_sphere_point(rng);
    const StereographicChart chart(pole);
    for (int k = 0; k < 20; ++k) {
        const SpherePoint x = random_sphere_point(rng);
        const Vec6 u = chart.forward(x);
        CHECK((chart.inverse(u).vector() - x.vector()).norm() <= 1e-12);
        // Jacobian against central differences.
        const Mat76 jac = chart.jacobian(u);
        const double h = 1e-6;
        for (int i = 0; i < 6; ++i) {
            const Vec7 fd =
                (chart.inverse(u + h * Vec6::Unit(i)).vector() - chart.inverse(u - h * Vec6::Unit(i)).vector()) / (2 * h);
            CHECK((jac.col(i) - fd).norm() <= 1e-7 * std::max(1.0, jac.col(i).norm()));
        }
        CHECK((jac.transpose() * x.vector()).norm() <= 1e-12 * jac.norm());
    }
    CHECK(chart.forward(pole.antipode()).norm() <= 1e-15);
    CHECK_THROWS_AS(chart.forward(pole), NearPole);
}

TEST_CASE("Levi-Civita derivative of a Killing field")
{
    // X(x) = K x with K skew is tangent to the sphere; nabla_Y X = P K Y.
    Rng rng(7);
    Mat7 k = oracle::random_matrix(7, 7, rng);
    k = (k - k.transpose()).eval();
    const auto field = [&](const SpherePoint& x) -> Vec7 { return k * x.vector(); };
    const SpherePoint p = random_sphere_point(rng);
    const Vec7 y = random_tangent(p, rng);
    const Vec7 exact = tangent_projector(p) * k * y;
    const double e1 = (levi_civita_derivative(field, p, y, 1e-3) - exact).norm();
    const double e2 = (levi_civita_derivative(field, p, y, 5e-4) - exact).norm();
    CHECK(e1 <= 1e-5);
    CHECK(std::log2(e1 / e2) > 1.9);
    const double er = (levi_civita_derivative(field, p, y, 1e-3, Extrapolation::Richardson) - exact).norm();
    CHECK(er < e1 / 100.0);
    CHECK_THROWS_AS(levi_civita_derivative(field, p, y, 1e-2), InvalidArgument);
    CHECK_THROWS_AS(levi_civita_derivative(field, p, y, 0.0), InvalidArgument);
    CHECK_THROWS_AS(levi_civita_derivative(field, p, Vec7::Zero()), DegenerateDirection);
}

TEST_CASE("parallel fields along geodesics have zero derivative")
{
    Rng rng(8);
    const SpherePoint p = random_sphere_point(rng);
    const Mat7 fixed = oracle::random_matrix(7, 7, rng);
    // The operator field x -> T_{p->x} M T_{p->x}^T is parallel along every
    // geodesic from p, so its covariant derivative at p vanishes.
    const auto field = [&](const SpherePoint& x) -> Mat7 {
        const Mat7 t = parallel_transport(p, x);
        return t * fixed * t.transpose();
    };
    const Vec7 x = random_tangent(p, rng);
    CHECK(levi_civita_derivative(field, p, x).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("exterior derivative on the sphere")
{
    Rng rng(9);
    const SpherePoint p = random_sphere_point(rng);
    const Eigen::MatrixXd frame = tangent_frame(p).columns;

    // beta_x = i_x w for a constant 2-form w has d beta = 2 w.
    const AlternatingForm w = oracle::random_form(7, 2, rng);
    const FormField beta = [&](const SpherePoint& x) { return interior(x.vector(), w); };
    const AlternatingForm d = exterior_derivative_on_sphere(beta, p);
    CHECK(max_abs_diff(pullback(d, frame), pullback(2.0 * w, frame)) <= 1e-6);

    // A constant covector restricts to an exact form.
    const AlternatingForm a = oracle::random_form(7, 1, rng);
    const FormField alpha = [&](const SpherePoint&) { return a; };
    CHECK(pullback(exterior_derivative_on_sphere(alpha, p), frame).max_abs() <= 1e-6);

    // d d = 0 on a 2-form field.
    const AlternatingForm t = oracle::random_form(7, 3, rng);
    const FormField gamma = [&](const SpherePoint& x) {
        return horizontal_part(interior(x.vector(), t) * x.vector()(0), x);
    };
    const FormField dgamma = [&](const SpherePoint& x) { return exterior_derivative_on_sphere(gamma, x, 1e-3); };
    CHECK(pullback(exterior_derivative_on_sphere(dgamma, p, 1e-3), frame).max_abs() <= 1e-3);

    // The result is horizontal.
    CHECK(interior(p.vector(), d).max_abs() <= 1e-10);

    // Any chart avoiding p gives the same answer.
    const StereographicChart other(random_sphere_point(rng));
    CHECK(max_abs_diff(exterior_derivative_on_sphere(beta, p, other), d) <= 1e-6);
}

TEST_CASE("horizontal part kills the normal direction")
{
    Rng rng(10);
    const SpherePoint p = random_sphere_point(rng);
    const AlternatingForm f = horizontal_part(oracle::random_form(7, 3, rng), p);
    CHECK(interior(p.vector(), f).max_abs() <= 1e-14);
}
