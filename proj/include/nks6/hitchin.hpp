#pragma once

#include "nks6/forms.hpp"
#include "nks6/linalg.hpp"

#include <optional>
#include <utility>

namespace nks6 {

/// The vector v with i_v Vol = phi5 on R^6, in units of Vol (so the result is
/// a vector-valued density: v tensor Vol). Throws DegenerateVolume if the
/// volume coefficient is below 1e-300 in magnitude.
Vec6 five_form_to_vector(const AlternatingForm& phi5, const AlternatingForm& vol);

/**
 * Hitchin's invariants of a 3-form on R^6.
 *
 * K(X) = A(i_X psi ^ psi) with A the inverse of v -> i_v Vol; tau = tr(K^2)/6;
 * when tau < 0 the form is stable and J = K / sqrt(-tau) is a complex
 * structure. K and tau are densities relative to Vol; J is invariant under
 * positive rescaling of Vol and flips sign with it. With these formulas J
 * induces the orientation opposite to Vol.
 */
struct HitchinResult
{
    Mat6 K = Mat6::Zero();
    double tau = 0.0;
    double kappa = 0.0;  ///< sqrt(-tau) when stable, else 0
    std::optional<Mat6> J;

    bool stable() const { return J.has_value(); }
    /// max |K^2 - tau Id| / max(|tau|, 1e-300)
    double square_residual() const;
};

HitchinResult hitchin(const AlternatingForm& psi, const AlternatingForm& vol);

/// Real and imaginary parts of a complex 3-form Psi.
struct ComplexVolume
{
    AlternatingForm re;
    AlternatingForm im;
};

/// dz1 ^ dz2 ^ dz3 with z_k = x_k + i y_k in the real basis
/// (x1, x2, x3, y1, y2, y3).
ComplexVolume standard_complex_volume();

/// J0 with J0(d/dx_k) = d/dy_k in the real basis (x1, x2, x3, y1, y2, y3).
Mat6 standard_complex_structure();

/// Re(lambda^3 Psi) = cos(3 phi) Re Psi - sin(3 phi) Im Psi. Throws Unstable
/// if Re Psi is not a stable form relative to `vol`.
AlternatingForm lambda_rotate(const ComplexVolume& psi, double phi,
                              const AlternatingForm& vol = AlternatingForm::volume(6));

/// psi(lambda X, lambda Y, lambda Z) with lambda = cos(phi) Id + sin(phi) J.
AlternatingForm lambda_pullback(const AlternatingForm& psi, const Mat6& j, double phi);

/// Im Psi recovered from Re Psi and its complex structure: the 3-form
/// phi_hat with i_{JX} phi_hat = i_X psi, i.e. phi_hat(W, Y, Z) = -psi(JW, Y, Z).
AlternatingForm conjugate_three_form(const AlternatingForm& psi, const Eigen::MatrixXd& j);

/// Compatible pair (omega, psi) on R^6 with its induced complex structure and
/// metric g(X, Y) = omega(X, J Y).
struct SU3Structure
{
    AlternatingForm omega;
    AlternatingForm psi;
    AlternatingForm vol;
    Mat6 J = Mat6::Zero();
    Mat6 metric = Mat6::Identity();
};

struct SU3Residuals
{
    double omega_wedge_psi = 0.0;  ///< max |omega ^ psi|
    double metric_symmetry = 0.0;  ///< max |g - g^T|
    double min_metric_eigenvalue = 0.0;
    double j_invariance = 0.0;     ///< max |J^T g J - g|
    double omega_cubed = 0.0;      ///< |omega^3| coefficient (nondegeneracy)
};

SU3Residuals su3_residuals(const AlternatingForm& omega, const AlternatingForm& psi, const Mat6& j);

/// Builds the structure and validates it: psi stable, omega ^ psi = 0 and
/// the metric symmetric, J-invariant and positive (each within `tol`,
/// relative to the form scale). Throws InvalidArgument naming the failed
/// condition.
SU3Structure make_su3(const AlternatingForm& omega, const AlternatingForm& psi, const AlternatingForm& vol,
                      double tol = 1e-10);

/// Pushes the structure forward by A in SO(6): both forms pulled back by
/// A^{-1}, so J becomes A J A^{-1} and the metric A^{-T} g A^{-1}.
SU3Structure rotate_su3(const SU3Structure& s, const Mat6& a);

/// Transforms omega by A^{-1} and psi by A, as the two formulas are commonly
/// printed side by side. The result is generally not a compatible pair unless
/// A commutes with J; it is returned as raw forms.
std::pair<AlternatingForm, AlternatingForm> rotate_forms_mixed(const SU3Structure& s, const Mat6& a);

} // namespace nks6
