#include "nks6/cone.hpp"

#include <cmath>

namespace nks6 {

namespace {

AlternatingForm rotated_three_form(const Rotation7& rotation)
{
    return pullback(g2_three_form(), rotation.matrix());
}

} // namespace

AlternatingForm g2_three_form_from_product()
{
    AlternatingForm phi(7, 3);
    const auto& masks = index_masks(7, 3);
    for (std::size_t r = 0; r < masks.size(); ++r) {
        int idx[3];
        int c = 0;
        for (int i = 0; i < 7; ++i) {
            if (masks[r] & (1u << i)) {
                idx[c++] = i;
            }
        }
        phi[r] = im_product(Vec7::Unit(idx[1]), Vec7::Unit(idx[0])).dot(Vec7::Unit(idx[2]));
    }
    return phi;
}

AlternatingForm g2_three_form()
{
    // Coefficients on e^{ijk}, i < j < k, in index_masks(7, 3) order.
    static const AlternatingForm phi(7, 3, {
        -1, 0, 0, 0, 0, 0, 0,
        0, 0, -1, 0, 0, 0, 0,
        1, 0, 0, 0, 0, 0, -1,
        0, 0, -1, 0, 0, 0, -1,
        1, 0, 0, 0, 0, 0, 0,
    });
    return phi;
}

AlternatingForm tangent_hitchin_volume() { return -AlternatingForm::volume(6); }

ConeStructure cone_extract(const SpherePoint& p, const Rotation7& rotation)
{
    const AlternatingForm rho = rotated_three_form(rotation);
    const Mat76 frame = tangent_frame(p).columns;
    const AlternatingForm omega = pullback(interior(p.vector(), rho), frame);
    const AlternatingForm psi = pullback(rho, frame);
    return ConeStructure{p, frame, make_su3(omega, psi, tangent_hitchin_volume())};
}

FormField cone_omega_field(const Rotation7& rotation)
{
    const AlternatingForm rho = rotated_three_form(rotation);
    return [rho](const SpherePoint& x) { return horizontal_part(interior(x.vector(), rho), x); };
}

FormField cone_psi_field(const Rotation7& rotation)
{
    const AlternatingForm rho = rotated_three_form(rotation);
    return [rho](const SpherePoint& x) { return horizontal_part(rho, x); };
}

FormField cone_phi_hat_field(const Rotation7& rotation)
{
    return [rotation](const SpherePoint& x) {
        const ConeStructure c = cone_extract(x, rotation);
        const AlternatingForm phi_hat = conjugate_three_form(c.su3.psi, c.su3.J);
        // Push the frame-coordinate form to R^7; it vanishes on the normal line.
        const Eigen::MatrixXd to_frame = c.frame.transpose();
        return pullback(phi_hat, to_frame);
    };
}

PdeReport nk_pde_check(const SpherePoint& p, double h, const Rotation7& rotation)
{
    const ConeStructure c = cone_extract(p, rotation);
    const Eigen::MatrixXd frame = c.frame;

    const AlternatingForm domega = pullback(exterior_derivative_on_sphere(cone_omega_field(rotation), p, h), frame);
    const AlternatingForm dphi = pullback(exterior_derivative_on_sphere(cone_phi_hat_field(rotation), p, h), frame);
    const AlternatingForm ww = wedge(c.su3.omega, c.su3.omega);

    PdeReport r;
    r.residual_domega = max_abs_diff(domega, 3.0 * c.su3.psi);
    r.mu = -dphi.dot(ww) / (2.0 * ww.dot(ww));
    r.residual_dphi = (dphi + 2.0 * r.mu * ww).max_abs();
    return r;
}

} // namespace nks6
