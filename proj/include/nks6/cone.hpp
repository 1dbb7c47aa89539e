#pragma once

#include "nks6/hitchin.hpp"
#include "nks6/octonion.hpp"
#include "nks6/sphere.hpp"

namespace nks6 {

/// phi0(x, y, z) = <y x, z> on Im O = R^7. With this order i_x phi0 is the
/// Kaehler form of the right-multiplication structure R_x.
AlternatingForm g2_three_form();

/// The same form rebuilt from the octonion product (used to check the table).
AlternatingForm g2_three_form_from_product();

/// Volume form on T_pS^6 handed to the Hitchin machinery, in the coordinates of
/// the positively oriented tangent frame. The sign compensates for J = K / kappa
/// inducing the orientation opposite to Vol.
AlternatingForm tangent_hitchin_volume();

/// SU(3)-structure on T_pS^6 induced by the cone form, in frame coordinates.
struct ConeStructure
{
    SpherePoint base;
    Mat76 frame;  ///< positively oriented tangent frame used as coordinates
    SU3Structure su3;

    /// J as a 7x7 operator vanishing on p.
    Mat7 ambient_J() const { return frame * su3.J * frame.transpose(); }
};

/// omega = i_p rho and psi = rho restricted to T_pS^6, for rho = A^* phi0
/// (A = Id gives the standard structure). J and the metric come from Hitchin.
ConeStructure cone_extract(const SpherePoint& p, const Rotation7& rotation = Rotation7());

/// The fields x -> i_x rho and x -> rho on the sphere, with normal
/// components removed.
FormField cone_omega_field(const Rotation7& rotation = Rotation7());
FormField cone_psi_field(const Rotation7& rotation = Rotation7());
/// x -> phi_hat built from psi and the cone J: i_{JX} phi_hat = i_X psi.
FormField cone_phi_hat_field(const Rotation7& rotation = Rotation7());

struct PdeReport
{
    double residual_domega = 0.0;  ///< max |d omega - 3 psi| in frame coordinates
    double mu = 0.0;               ///< least-squares fit of d phi_hat = -2 mu omega ^ omega
    double residual_dphi = 0.0;    ///< max |d phi_hat + 2 mu omega ^ omega|
};

/// Throws NearPole if p lies too close to the chart pole.
PdeReport nk_pde_check(const SpherePoint& p, double h = 1e-4, const Rotation7& rotation = Rotation7());

} // namespace nks6
