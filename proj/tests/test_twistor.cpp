#include "oracles.hpp"

#include <nks6/errors.hpp>
#include <nks6/twistor.hpp>

#include <doctest.h>

using namespace nks6;

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Rank of the union of two section tangent spaces, built from the closed
/// form and flattened into R^7 x R^49 without any fiber basis.
int flattened_rank(const CayleyStructure& a, const CayleyStructure& b, const SpherePoint& p)
{
    const Mat76 frame = tangent_frame(p).columns;
    Eigen::MatrixXd m(56, 12);
    for (int which = 0; which < 2; ++which) {
        const CayleyStructure& s = which == 0 ? a : b;
        for (int i = 0; i < 6; ++i) {
            const Vec7 x = frame.col(i);
            const Mat7 k = section_derivative_closed_form(s, p, x);
            Eigen::VectorXd v(56);
            v.head<7>() = x;
            v.tail<49>() = Eigen::Map<const Eigen::VectorXd>(k.data(), 49);
            m.col(which * 6 + i) = v;
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        rank += svd.singularValues()(i) > 1e-8 ? 1 : 0;
    }
    return rank;
}

} // namespace

TEST_CASE("twistor points validate")
{
    Rng rng(1);
    const SpherePoint p = random_sphere_point(rng);
    const Mat7 j = right_mul_operator(p.vector());
    CHECK_NOTHROW(TwistorPoint(p, j));
    CHECK_THROWS_AS(TwistorPoint(p, -j), OrientationMismatch);
    CHECK_THROWS_AS(TwistorPoint(p, j + 1e-3 * Mat7::Identity()), InvalidArgument);
    CHECK_THROWS_AS(TwistorPoint(p, Mat7::Zero()), InvalidArgument);
    for (int k = 0; k < 20; ++k) {
        const TwistorPoint tp = random_twistor_point(rng);
        CHECK(fiber_residuals(tp.point(), tp.op()).orientation == 1);
    }
}

TEST_CASE("family parameters live on a circle of length 2 pi / 3")
{
    CHECK(FamilyParameter(kFamilyPeriod).value() == doctest::Approx(0.0));
    CHECK(FamilyParameter(-0.1).value() == doctest::Approx(kFamilyPeriod - 0.1));
    CHECK(FamilyParameter(0.5 + 3 * kFamilyPeriod).value() == doctest::Approx(0.5));
    CHECK(family_parameter_gap(0.1, kFamilyPeriod - 0.1) == doctest::Approx(0.2));
    CHECK_THROWS_AS(FamilyParameter(std::nan("")), InvalidArgument);
}

TEST_CASE("lambda operators: central in U(3), in G2 exactly at multiples of the period")
{
    Rng rng(2);
    const SpherePoint p = random_sphere_point(rng);
    const Mat7 j = right_mul_operator(p.vector());
    for (double phi : {0.3, 1.0, 2.5}) {
        const Mat7 l = lambda_operator(p, phi);
        CHECK((l.transpose() * l - Mat7::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK((l * j - j * l).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK_FALSE(is_g2(Rotation7(l)));
    }
    CHECK(is_g2(Rotation7(lambda_operator(p, kFamilyPeriod))));
    CHECK(is_g2(Rotation7(lambda_operator(p, 2 * kFamilyPeriod))));
}

TEST_CASE("the lift reproduces the fiber operator and fixes the point")
{
    Rng rng(3);
    for (int k = 0; k < 50; ++k) {
        const TwistorPoint tp = random_twistor_point(rng);
        const CayleyStructure s = lift_to_cayley(tp);
        CHECK((s(tp.point()) - tp.op()).cwiseAbs().maxCoeff() <= 1e-13);
        CHECK((s.rotation()(tp.point().vector()) - tp.point().vector()).norm() <= 1e-14);
        CHECK(s.rotation().orthogonality_residual() <= 1e-13);
        CHECK(s.rotation().determinant() == doctest::Approx(1.0));
    }
}

TEST_CASE("family members pass through the base point with period 2 pi / 3")
{
    Rng rng(4);
    const TwistorPoint tp = random_twistor_point(rng);
    const StructureFamily f = family_through(tp);
    for (int k = 0; k < 16; ++k) {
        const double phi = k * 2 * kPi / 16;
        CHECK((f.member(phi)(tp.point()) - tp.op()).cwiseAbs().maxCoeff() <= 1e-13);
    }
    CHECK(structures_equal(f.member(0.4), f.member(0.4 + kFamilyPeriod), 100, 1e-12, rng).equal);
    CHECK_FALSE(structures_equal(f.member(0.4), f.member(0.4 + kPi / 3), 100, 1e-3, rng).equal);
    CHECK(structures_equal(f.member(FamilyParameter(7.0)), f.member(7.0), 20, 1e-12, rng).equal);
}

TEST_CASE("two family members meet exactly at +-p")
{
    Rng rng(5);
    const TwistorPoint tp = random_twistor_point(rng);
    const StructureFamily f(tp);
    const IntersectionReport r = intersection_scan(f.member(0.0), f.member(kPi / 4), 3000, 1e-8, rng);
    REQUIRE(r.clusters.size() == 2);
    for (const auto& c : r.clusters) {
        const double d = geodesic_distance(c.point, tp.point());
        CHECK((d <= 1e-8 || std::abs(d - kPi) <= 1e-8));
        CHECK(c.residual <= 1e-10);
    }
    CHECK(r.min_generic_difference > 1e-2);
    CHECK_FALSE(r.degenerate);

    const IntersectionReport same = intersection_scan(f.member(0.2), f.member(0.2), 200, 1e-8, rng);
    CHECK(same.degenerate);
}

TEST_CASE("fiber tangent basis")
{
    Rng rng(6);
    const TwistorPoint tp = random_twistor_point(rng);
    const auto basis = fiber_tangent_basis(tp.point(), tp.op());
    const Mat7& j = tp.op();
    for (int a = 0; a < 6; ++a) {
        const Mat7& e = basis[a];
        CHECK((e + e.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK((e * j + j * e).cwiseAbs().maxCoeff() <= 1e-14);
        CHECK((e * tp.point().vector()).norm() <= 1e-14);
        for (int b = 0; b < 6; ++b) {
            CHECK((e.cwiseProduct(basis[b])).sum() == doctest::Approx(a == b ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("section tangents match the closed form and are fiber tangent")
{
    Rng rng(7);
    const TwistorPoint tp = random_twistor_point(rng);
    const CayleyStructure s = StructureFamily(tp).member(0.9);
    const SectionTangentSpace t = section_tangent(s, tp);
    for (int i = 0; i < 6; ++i) {
        const Mat7 exact = section_derivative_closed_form(s, tp.point(), t.directions.col(i));
        CHECK((t.derivatives[i] - exact).cwiseAbs().maxCoeff() <= 1e-6);
        CHECK((t.derivatives[i] * tp.op() + tp.op() * t.derivatives[i]).cwiseAbs().maxCoeff() <= 1e-8);
    }
    CHECK_THROWS_AS(section_tangent(CayleyStructure(random_rotation(rng)), tp), NotThroughPoint);
}

TEST_CASE("distinct family members are transverse at the base point")
{
    Rng rng(8);
    for (int k = 0; k < 10; ++k) {
        const TwistorPoint tp = random_twistor_point(rng);
        const StructureFamily f(tp);
        const double phi = uniform(rng, 0.0, kFamilyPeriod);
        const CayleyStructure a = f.member(phi);
        const CayleyStructure b = f.member(phi + kPi / 3);
        const TransversalityReport r = transversality_test(a, b, tp);
        CHECK(r.transverse());
        CHECK(r.min_singular_value > 1e-3);
        CHECK(flattened_rank(a, b, tp.point()) == 12);

        CHECK(transversality_test(a, a, tp).rank == 6);
        CHECK(transversality_test(a, f.member(phi + kFamilyPeriod), tp).rank == 6);
        CHECK(flattened_rank(a, a, tp.point()) == 6);
    }
}

TEST_CASE("membership: self, G2-composed, and off-point structures")
{
    Rng rng(9);
    const TwistorPoint tp = random_twistor_point(rng);
    const StructureFamily f(tp);
    for (int k = 0; k < 5; ++k) {
        const double phi = uniform(rng, 0.0, kFamilyPeriod);
        const MembershipReport self = membership_test(f.member(phi), tp, 50, 1e-8, rng);
        REQUIRE(self.member);
        REQUIRE(self.phi.has_value());
        CHECK(std::abs(family_parameter_gap(self.phi->value(), phi)) <= 1e-6);

        const CayleyStructure composed(random_g2(rng) * f.member(phi).rotation());
        const MembershipReport m = membership_test(composed, tp, 50, 1e-8, rng);
        CHECK(m.member);
        CHECK(std::abs(family_parameter_gap(m.phi->value(), phi)) <= 1e-6);
    }
    CHECK_THROWS_AS(membership_test(CayleyStructure(random_rotation(rng)), tp, 10, 1e-8, rng), NotThroughPoint);
}

TEST_CASE("structures through the same point from another lift are family members")
{
    // Any rotation B with J^B_p = J_p: compose the lift with a rotation that
    // fixes p and commutes with the standard structure there (a U(3) element).
    Rng rng(10);
    const TwistorPoint tp = random_twistor_point(rng);
    const StructureFamily f(tp);
    const SpherePoint& p = tp.point();
    const Mat7 rp = right_mul_operator(p.vector());
    Mat7 k = oracle::random_matrix(7, 7, rng);
    k = tangent_projector(p) * (k - k.transpose()) * tangent_projector(p);
    k = 0.5 * (k - rp * k * rp);  // commutes with R_p
    const Mat7 u = expm((0.3 * k).eval());
    const CayleyStructure s(Rotation7(u * f.lift().matrix()));
    REQUIRE((s(p) - tp.op()).cwiseAbs().maxCoeff() <= 1e-9);
    const MembershipReport m = membership_test(s, tp, 100, 1e-8, rng);
    CHECK(m.member);
}
