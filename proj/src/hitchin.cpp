#include "nks6/hitchin.hpp"

#include "nks6/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>

namespace nks6 {

namespace {

void require_six(const AlternatingForm& f, int degree, const char* what)
{
    if (f.dim() != 6 || f.degree() != degree) {
        throw InvalidArgument(std::string(what) + ": expected a " + std::to_string(degree) + "-form on R^6");
    }
}

double volume_coefficient(const AlternatingForm& vol)
{
    require_six(vol, 6, "volume");
    return vol[0];
}

Mat6 two_form_matrix(const AlternatingForm& omega)
{
    Mat6 w = Mat6::Zero();
    for (int a = 0; a < 6; ++a) {
        for (int b = a + 1; b < 6; ++b) {
            const double v = omega.coefficient((1u << a) | (1u << b));
            w(a, b) = v;
            w(b, a) = -v;
        }
    }
    return w;
}

} // namespace

Vec6 five_form_to_vector(const AlternatingForm& phi5, const AlternatingForm& vol)
{
    require_six(phi5, 5, "five_form_to_vector");
    const double c = volume_coefficient(vol);
    if (std::abs(c) < 1e-300) {
        throw DegenerateVolume("volume form vanishes");
    }
    // i_v (e^0 ^ ... ^ e^5) = sum_i (-1)^i v_i e^{[6] \ i}
    Vec6 v;
    for (int i = 0; i < 6; ++i) {
        const std::uint32_t mask = 0x3Fu & ~(1u << i);
        v(i) = ((i % 2 == 0) ? 1.0 : -1.0) * phi5.coefficient(mask) / c;
    }
    return v;
}

double HitchinResult::square_residual() const
{
    const Mat6 r = K * K - tau * Mat6::Identity();
    return r.cwiseAbs().maxCoeff() / std::max(std::abs(tau), 1e-300);
}

HitchinResult hitchin(const AlternatingForm& psi, const AlternatingForm& vol)
{
    require_six(psi, 3, "hitchin");
    HitchinResult r;
    for (int j = 0; j < 6; ++j) {
        const AlternatingForm five = wedge(interior(Vec6::Unit(j), psi), psi);
        r.K.col(j) = five_form_to_vector(five, vol);
    }
    r.tau = (r.K * r.K).trace() / 6.0;
    const double scale = std::max(1e-300, r.K.cwiseAbs().maxCoeff() * r.K.cwiseAbs().maxCoeff());
    if (r.tau < -1e-12 * scale) {
        r.kappa = std::sqrt(-r.tau);
        r.J = r.K / r.kappa;
    }
    return r;
}

ComplexVolume standard_complex_volume()
{
    using C = std::complex<double>;
    // Multiply out dz1 ^ dz2 ^ dz3 term by term: each dz_k contributes either
    // dx_k (weight 1) or dy_k (weight i).
    ComplexVolume out{AlternatingForm(6, 3), AlternatingForm(6, 3)};
    for (int pick = 0; pick < 8; ++pick) {
        C weight = 1.0;
        int idx[3];
        for (int k = 0; k < 3; ++k) {
            const bool imag = (pick >> k) & 1;
            idx[k] = imag ? k + 3 : k;
            if (imag) {
                weight *= C(0.0, 1.0);
            }
        }
        const AlternatingForm term = AlternatingForm::basis(6, std::span<const int>(idx, 3));
        out.re += term * weight.real();
        out.im += term * weight.imag();
    }
    return out;
}

Mat6 standard_complex_structure()
{
    Mat6 j = Mat6::Zero();
    for (int k = 0; k < 3; ++k) {
        j(k + 3, k) = 1.0;
        j(k, k + 3) = -1.0;
    }
    return j;
}

AlternatingForm lambda_rotate(const ComplexVolume& psi, double phi, const AlternatingForm& vol)
{
    if (!hitchin(psi.re, vol).stable()) {
        throw Unstable("real part is not a stable 3-form");
    }
    return std::cos(3.0 * phi) * psi.re - std::sin(3.0 * phi) * psi.im;
}

AlternatingForm lambda_pullback(const AlternatingForm& psi, const Mat6& j, double phi)
{
    const Mat6 lambda = std::cos(phi) * Mat6::Identity() + std::sin(phi) * j;
    return pullback(psi, lambda);
}

AlternatingForm conjugate_three_form(const AlternatingForm& psi, const Eigen::MatrixXd& j)
{
    if (psi.degree() != 3 || j.rows() != psi.dim() || j.cols() != psi.dim()) {
        throw InvalidArgument("conjugate_three_form: shape mismatch");
    }
    const int n = psi.dim();
    AlternatingForm out(n, 3);
    const auto& masks = index_masks(n, 3);
    for (std::size_t r = 0; r < masks.size(); ++r) {
        Eigen::MatrixXd cols(n, 3);
        int c = 0;
        for (int i = 0; i < n; ++i) {
            if (masks[r] & (1u << i)) {
                cols.col(c++) = Eigen::VectorXd::Unit(n, i);
            }
        }
        cols.col(0) = j * cols.col(0);
        out[r] = -psi.evaluate(cols);
    }
    return out;
}

SU3Residuals su3_residuals(const AlternatingForm& omega, const AlternatingForm& psi, const Mat6& j)
{
    require_six(omega, 2, "su3_residuals");
    require_six(psi, 3, "su3_residuals");
    SU3Residuals r;
    r.omega_wedge_psi = wedge(omega, psi).max_abs();
    const Mat6 g = two_form_matrix(omega) * j;
    r.metric_symmetry = (g - g.transpose()).cwiseAbs().maxCoeff();
    const Mat6 sym = 0.5 * (g + g.transpose());
    r.min_metric_eigenvalue = Eigen::SelfAdjointEigenSolver<Mat6>(sym).eigenvalues().minCoeff();
    r.j_invariance = (j.transpose() * g * j - g).cwiseAbs().maxCoeff();
    r.omega_cubed = std::abs(wedge(omega, wedge(omega, omega))[0]);
    return r;
}

SU3Structure make_su3(const AlternatingForm& omega, const AlternatingForm& psi, const AlternatingForm& vol,
                      double tol)
{
    require_six(omega, 2, "make_su3");
    require_six(psi, 3, "make_su3");
    const HitchinResult h = hitchin(psi, vol);
    if (!h.stable()) {
        throw InvalidArgument("make_su3: psi is not stable");
    }
    const double scale = std::max({1.0, omega.max_abs(), psi.max_abs()});
    const SU3Residuals r = su3_residuals(omega, psi, *h.J);
    if (r.omega_cubed < tol) {
        throw InvalidArgument("make_su3: omega is degenerate");
    }
    if (r.omega_wedge_psi > tol * scale * scale) {
        throw InvalidArgument("make_su3: omega ^ psi != 0 (" + std::to_string(r.omega_wedge_psi) + ")");
    }
    if (r.metric_symmetry > tol * scale || r.j_invariance > tol * scale) {
        throw InvalidArgument("make_su3: metric is not symmetric and J-invariant");
    }
    if (r.min_metric_eigenvalue <= 0.0) {
        throw InvalidArgument("make_su3: metric is not positive definite");
    }
    SU3Structure s{omega, psi, vol, *h.J, Mat6::Identity()};
    const Mat6 g = two_form_matrix(omega) * s.J;
    s.metric = 0.5 * (g + g.transpose());
    return s;
}

SU3Structure rotate_su3(const SU3Structure& s, const Mat6& a)
{
    const Mat6 inv = a.inverse();
    SU3Structure out = s;
    out.omega = pullback(s.omega, inv);
    out.psi = pullback(s.psi, inv);
    out.J = a * s.J * inv;
    out.metric = inv.transpose() * s.metric * inv;
    return out;
}

std::pair<AlternatingForm, AlternatingForm> rotate_forms_mixed(const SU3Structure& s, const Mat6& a)
{
    return {pullback(s.omega, a.inverse()), pullback(s.psi, a)};
}

} // namespace nks6
