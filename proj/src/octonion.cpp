#include "nks6/octonion.hpp"

#include "nks6/errors.hpp"

#include <cmath>
#include <sstream>
#include <vector>

namespace nks6 {

namespace {

using Quat = Eigen::Vector4d;

Quat qmul(const Quat& a, const Quat& b)
{
    return Quat(a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
                a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
                a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
                a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]);
}

Quat qconj(const Quat& a) { return Quat(a[0], -a[1], -a[2], -a[3]); }

Vec8 extend(const Mat7& a, const Vec8& x)
{
    Vec8 out;
    out[0] = x[0];
    out.tail<7>() = a * x.tail<7>();
    return out;
}

} // namespace

Octonion Octonion::operator*(const Octonion& o) const
{
    const Quat a = c_.head<4>();
    const Quat b = c_.tail<4>();
    const Quat c = o.c_.head<4>();
    const Quat d = o.c_.tail<4>();
    Vec8 out;
    out.head<4>() = qmul(a, c) - qmul(qconj(d), b);
    out.tail<4>() = qmul(d, a) + qmul(b, qconj(c));
    return Octonion(out);
}

Octonion associator(const Octonion& x, const Octonion& y, const Octonion& z)
{
    return (x * y) * z - x * (y * z);
}

Octonion commutator(const Octonion& x, const Octonion& y) { return x * y - y * x; }

double im_inner(const Vec7& x, const Vec7& y)
{
    return -(Octonion::imaginary(x) * Octonion::imaginary(y)).real();
}

Vec7 im_product(const Vec7& x, const Vec7& y)
{
    return (Octonion::imaginary(x) * Octonion::imaginary(y)).imag();
}

Mat7 right_mul_operator(const Vec7& x)
{
    Mat7 m;
    for (int j = 0; j < 7; ++j) {
        m.col(j) = im_product(Vec7::Unit(j), x);
    }
    return m;
}

Mat7 left_mul_operator(const Vec7& x)
{
    Mat7 m;
    for (int j = 0; j < 7; ++j) {
        m.col(j) = im_product(x, Vec7::Unit(j));
    }
    return m;
}

Rotation7::Rotation7(const Mat7& m, double tol) : m_(m)
{
    const double orth = orthogonality_residual();
    const double det = m_.determinant();
    if (orth > tol || std::abs(det - 1.0) > tol) {
        std::ostringstream os;
        os << "matrix is not in SO(7): orthogonality residual " << orth << ", det " << det;
        throw InvalidArgument(os.str());
    }
}

double Rotation7::orthogonality_residual() const
{
    return (m_.transpose() * m_ - Mat7::Identity()).cwiseAbs().maxCoeff();
}

double leibniz_residual(const Mat7& d)
{
    double worst = 0.0;
    for (int i = 0; i < 7; ++i) {
        for (int j = 0; j < 7; ++j) {
            const Octonion a = Octonion::unit(i + 1);
            const Octonion b = Octonion::unit(j + 1);
            const Vec8 ab = (a * b).coeffs();
            Vec8 lhs;
            lhs[0] = 0.0;
            lhs.tail<7>() = d * ab.tail<7>();
            const Octonion da = Octonion::imaginary(d.col(i));
            const Octonion db = Octonion::imaginary(d.col(j));
            const Vec8 rhs = (da * b + a * db).coeffs();
            worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

Derivation::Derivation(const Mat7& m, double tol) : m_(m)
{
    const double skew = (m_ + m_.transpose()).cwiseAbs().maxCoeff();
    const double leibniz = leibniz_residual(m_);
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    if (skew > tol * scale || leibniz > tol * scale) {
        std::ostringstream os;
        os << "skew residual " << skew << ", Leibniz residual " << leibniz;
        throw LeibnizViolation(os.str());
    }
}

Derivation Derivation::operator*(double s) const
{
    Derivation d;
    d.m_ = m_ * s;
    return d;
}

Derivation Derivation::operator+(const Derivation& o) const
{
    Derivation d;
    d.m_ = m_ + o.m_;
    return d;
}

Rotation7 Derivation::exp() const { return Rotation7::unchecked(expm(m_)); }

Derivation standard_derivation(const Vec7& a, const Vec7& b)
{
    const Octonion oa = Octonion::imaginary(a);
    const Octonion ob = Octonion::imaginary(b);
    const Octonion ab = commutator(oa, ob);
    Mat7 m;
    for (int j = 0; j < 7; ++j) {
        const Octonion z = Octonion::unit(j + 1);
        const Octonion image = commutator(ab, z) - 3.0 * associator(oa, ob, z);
        m.col(j) = image.imag();
    }
    return Derivation(m);
}

double automorphism_defect(const Mat7& a)
{
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const Octonion x = Octonion::unit(i);
            const Octonion y = Octonion::unit(j);
            const Vec8 lhs = extend(a, (x * y).coeffs());
            const Vec8 rhs = (Octonion(extend(a, x.coeffs())) * Octonion(extend(a, y.coeffs()))).coeffs();
            worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

bool is_g2(const Rotation7& a, double tol) { return automorphism_defect(a.matrix()) <= tol; }

namespace {

// Haar measure on O(n) via QR of a Gaussian matrix with the sign fix on R's
// diagonal; then flip one column to land in SO(n).
Eigen::MatrixXd haar_special_orthogonal(int n, Rng& rng)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            g(i, j) = gauss(rng);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        if (r(j, j) < 0.0) {
            q.col(j) *= -1.0;
        }
    }
    if (q.determinant() < 0.0) {
        q.col(0) *= -1.0;
    }
    return q;
}

} // namespace

Rotation7 random_rotation(Rng& rng)
{
    const Mat7 q = haar_special_orthogonal(7, rng);
    return Rotation7::unchecked(q);
}

Rotation7 random_rotation_about(const Vec7& axis, Rng& rng)
{
    const Vec7 n = axis.normalized();
    // Positively oriented orthonormal basis with n as its first column.
    Mat7 seed = Mat7::Identity();
    seed.col(0) = n;
    int next = 1;
    for (int k = 0; k < 7 && next < 7; ++k) {
        if (std::abs(n[k]) < 0.9) {
            seed.col(next++) = Vec7::Unit(k);
        }
    }
    Eigen::HouseholderQR<Mat7> qr(seed);
    Mat7 basis = qr.householderQ() * Mat7::Identity();
    if (basis.col(0).dot(n) < 0.0) {
        basis.col(0) *= -1.0;
    }
    if (basis.determinant() < 0.0) {
        basis.col(6) *= -1.0;
    }
    Mat7 inner = Mat7::Identity();
    inner.bottomRightCorner<6, 6>() = haar_special_orthogonal(6, rng);
    return Rotation7::unchecked(basis * inner * basis.transpose());
}

Rotation7 random_rotation(int dim, std::uint64_t seed)
{
    Rng rng(seed);
    if (dim == 7) {
        return random_rotation(rng);
    }
    if (dim == 6) {
        return random_rotation_about(Vec7::Unit(6), rng);
    }
    throw InvalidArgument("random_rotation: dim must be 6 or 7");
}

Rotation7 g2_from_derivations(std::span<const Derivation> steps)
{
    if (steps.empty()) {
        throw InvalidArgument("g2_from_derivations: need at least one step");
    }
    Mat7 g = Mat7::Identity();
    for (const Derivation& d : steps) {
        g = d.exp().matrix() * g;
    }
    return Rotation7::unchecked(g);
}

Rotation7 random_g2(Rng& rng, int steps)
{
    if (steps < 1) {
        throw InvalidArgument("random_g2: steps must be >= 1");
    }
    std::vector<Derivation> ds;
    ds.reserve(static_cast<std::size_t>(steps));
    for (int s = 0; s < steps; ++s) {
        ds.push_back(standard_derivation(gaussian_vec7(rng), gaussian_vec7(rng)) * 0.25);
    }
    return g2_from_derivations(ds);
}

Rotation7 random_g2(std::uint64_t seed, int steps)
{
    Rng rng(seed);
    return random_g2(rng, steps);
}

} // namespace nks6
