#include "oracles.hpp"

#include <nks6/errors.hpp>
#include <nks6/hitchin.hpp>
#include <nks6/octonion.hpp>

#include <doctest.h>

#include <complex>

using namespace nks6;

namespace {

const AlternatingForm kVol = AlternatingForm::volume(6);

AlternatingForm standard_omega()
{
    AlternatingForm w(6, 2);
    for (int k = 0; k < 3; ++k) {
        w += AlternatingForm::basis(6, {k, k + 3});
    }
    return w;
}

Mat6 random_gl_plus(Rng& rng)
{
    Mat6 m = oracle::random_matrix(6, 6, rng);
    if (m.determinant() < 0) {
        m.col(0) *= -1.0;
    }
    return m;
}

Mat6 random_so6(Rng& rng) { return random_rotation_about(Vec7::Unit(6), rng).matrix().topLeftCorner<6, 6>(); }

} // namespace

TEST_CASE("five-forms to vectors inverts contraction with the volume")
{
    Rng rng(1);
    const Vec6 v = oracle::random_matrix(6, 1, rng);
    CHECK((five_form_to_vector(interior(v, kVol), kVol) - v).norm() <= 1e-14);
    CHECK((five_form_to_vector(interior(v, 2.0 * kVol), kVol) - 2.0 * v).norm() <= 1e-14);
    CHECK_THROWS_AS(five_form_to_vector(interior(v, kVol), 0.0 * kVol), DegenerateVolume);
}

TEST_CASE("the real part of dz1 dz2 dz3 gives the standard complex structure")
{
    const ComplexVolume cv = standard_complex_volume();
    // Oracle: coefficients of dz1 ^ dz2 ^ dz3 evaluated on basis triples.
    const auto dz = [](int k, int i) -> std::complex<double> {
        return i == k ? 1.0 : (i == k + 3 ? std::complex<double>(0, 1) : 0.0);
    };
    const auto& masks = index_masks(6, 3);
    for (std::size_t r = 0; r < masks.size(); ++r) {
        int idx[3], c = 0;
        for (int i = 0; i < 6; ++i) {
            if (masks[r] & (1u << i)) {
                idx[c++] = i;
            }
        }
        std::complex<double> det = 0.0;
        int perm[3] = {0, 1, 2};
        do {
            const int sign = oracle::permutation_sign({perm[0], perm[1], perm[2]});
            det += static_cast<double>(sign) * dz(0, idx[perm[0]]) * dz(1, idx[perm[1]]) * dz(2, idx[perm[2]]);
        } while (std::next_permutation(perm, perm + 3));
        CHECK(cv.re[r] == doctest::Approx(det.real()));
        CHECK(cv.im[r] == doctest::Approx(det.imag()));
    }

    const HitchinResult h = hitchin(cv.re, kVol);
    REQUIRE(h.stable());
    CHECK(h.tau < 0.0);
    CHECK((*h.J - standard_complex_structure()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(h.square_residual() <= 1e-12);
}

TEST_CASE("K squares to tau for any 3-form")
{
    Rng rng(2);
    int stable = 0, unstable = 0;
    for (int k = 0; k < 200; ++k) {
        const AlternatingForm psi = oracle::random_form(6, 3, rng);
        const HitchinResult h = hitchin(psi, kVol);
        CHECK(h.square_residual() <= 1e-10);
        (h.stable() ? stable : unstable)++;
        if (h.stable()) {
            CHECK(((*h.J) * (*h.J) + Mat6::Identity()).cwiseAbs().maxCoeff() <= 1e-10);
        }
    }
    // Both open orbits occur with positive probability.
    CHECK(stable > 0);
    CHECK(unstable > 0);
}

TEST_CASE("split and degenerate forms are not stable")
{
    const AlternatingForm split = AlternatingForm::basis(6, {0, 1, 2}) + AlternatingForm::basis(6, {3, 4, 5});
    const HitchinResult h = hitchin(split, kVol);
    CHECK(h.tau > 0.0);
    CHECK_FALSE(h.stable());
    CHECK_THROWS_AS(lambda_rotate(ComplexVolume{split, split}, 0.1), Unstable);
    CHECK_FALSE(hitchin(AlternatingForm::basis(6, {0, 1, 2}), kVol).stable());
}

TEST_CASE("Hitchin's J is equivariant and flips with the orientation")
{
    Rng rng(3);
    const AlternatingForm psi = standard_complex_volume().re;
    const Mat6 j0 = standard_complex_structure();
    for (int k = 0; k < 10; ++k) {
        const Mat6 m = random_gl_plus(rng);
        const HitchinResult h = hitchin(pullback(psi, m), kVol);
        REQUIRE(h.stable());
        CHECK((*h.J - m.inverse() * j0 * m).cwiseAbs().maxCoeff() <= 1e-9);
    }
    CHECK((*hitchin(psi, -1.0 * kVol).J + j0).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((*hitchin(psi, 3.0 * kVol).J - j0).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("the lambda family rotates Psi and fixes J")
{
    const ComplexVolume cv = standard_complex_volume();
    const Mat6 j0 = standard_complex_structure();
    CHECK(max_abs_diff(lambda_rotate(cv, 0.0), cv.re) == 0.0);
    CHECK(max_abs_diff(lambda_rotate(cv, 2.0 * M_PI / 3.0), cv.re) <= 1e-15);
    for (double phi : {0.1, 0.7, 1.9, 4.0}) {
        const AlternatingForm r = lambda_rotate(cv, phi);
        CHECK(max_abs_diff(r, lambda_pullback(cv.re, j0, phi)) <= 1e-12);
        CHECK((*hitchin(r, kVol).J - j0).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("conjugate three-form recovers Im Psi")
{
    Rng rng(4);
    const ComplexVolume cv = standard_complex_volume();
    const Mat6 j0 = standard_complex_structure();
    const AlternatingForm hat = conjugate_three_form(cv.re, j0);
    CHECK(max_abs_diff(hat, cv.im) <= 1e-15);
    for (int k = 0; k < 50; ++k) {
        const Vec6 x = oracle::random_matrix(6, 1, rng);
        const Vec6 jx = j0 * x;
        CHECK(max_abs_diff(interior(jx, hat), interior(x, cv.re)) <= 1e-12);
    }
}

TEST_CASE("SU(3) structures validate compatibility and positivity")
{
    const AlternatingForm omega = standard_omega();
    const AlternatingForm psi = standard_complex_volume().re;
    const SU3Structure s = make_su3(omega, psi, kVol);
    CHECK((s.metric - Mat6::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK((s.J - standard_complex_structure()).cwiseAbs().maxCoeff() <= 1e-14);

    CHECK_THROWS_AS(make_su3(-1.0 * omega, psi, kVol), InvalidArgument);
    const AlternatingForm tilted = omega + AlternatingForm::basis(6, {0, 1});
    CHECK_THROWS_AS(make_su3(tilted, psi, kVol), InvalidArgument);
    CHECK_THROWS_AS(make_su3(omega, AlternatingForm::basis(6, {0, 1, 2}), kVol), InvalidArgument);
    CHECK_THROWS_AS(make_su3(AlternatingForm::basis(6, {0, 3}), psi, kVol), InvalidArgument);
}

TEST_CASE("rotating an SU(3) structure")
{
    Rng rng(5);
    const SU3Structure s = make_su3(standard_omega(), standard_complex_volume().re, kVol);
    const SU3Structure same = rotate_su3(s, Mat6::Identity());
    CHECK(max_abs_diff(same.psi, s.psi) == 0.0);
    CHECK(max_abs_diff(same.omega, s.omega) == 0.0);

    for (int k = 0; k < 10; ++k) {
        const Mat6 a = random_so6(rng);
        const SU3Structure r = rotate_su3(s, a);
        const HitchinResult h = hitchin(r.psi, kVol);
        CHECK((*h.J - a * s.J * a.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK((r.J - *h.J).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(wedge(r.omega, r.psi).max_abs() <= 1e-12);
        CHECK_NOTHROW(make_su3(r.omega, r.psi, kVol));
    }

    // Central U(3) elements leave J alone.
    const Mat6 lambda = std::cos(0.4) * Mat6::Identity() + std::sin(0.4) * s.J;
    CHECK((rotate_su3(s, lambda).J - s.J).cwiseAbs().maxCoeff() <= 1e-14);

    // Mixing push-forward for omega with pullback for psi breaks compatibility.
    const auto [w, p] = rotate_forms_mixed(s, random_so6(rng));
    CHECK(wedge(w, p).max_abs() > 1e-3);
}
