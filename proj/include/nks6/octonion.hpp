#pragma once

#include "nks6/linalg.hpp"

#include <cstdint>
#include <span>

namespace nks6 {

/// Convention tag embedded in every serialized artifact that depends on the
/// multiplication table.
inline constexpr const char* kOctonionConvention = "cayley-dickson-v1";

/**
 * Element of the Cayley algebra over the basis e0 = 1, e1 ... e7.
 *
 * The product is Cayley-Dickson doubling of the quaternions (e0..e3) with
 * e4 as the doubling unit:
 *
 *     (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))
 *
 * so that x = a + b e4 for quaternions a, b.
 */
class Octonion
{
public:
    Octonion() : c_(Vec8::Zero()) {}
    explicit Octonion(const Vec8& coeffs) : c_(coeffs) {}

    static Octonion unit(int i)
    {
        Vec8 v = Vec8::Zero();
        v[i] = 1.0;
        return Octonion(v);
    }
    static Octonion one() { return unit(0); }
    /// Embeds an imaginary vector (e1..e7 components).
    static Octonion imaginary(const Vec7& v)
    {
        Vec8 c;
        c[0] = 0.0;
        c.tail<7>() = v;
        return Octonion(c);
    }

    const Vec8& coeffs() const { return c_; }
    double operator[](int i) const { return c_[i]; }

    double real() const { return c_[0]; }
    Vec7 imag() const { return c_.tail<7>(); }
    double norm() const { return c_.norm(); }
    double squared_norm() const { return c_.squaredNorm(); }

    Octonion conj() const
    {
        Vec8 v = -c_;
        v[0] = c_[0];
        return Octonion(v);
    }

    Octonion operator+(const Octonion& o) const { return Octonion(c_ + o.c_); }
    Octonion operator-(const Octonion& o) const { return Octonion(c_ - o.c_); }
    Octonion operator-() const { return Octonion(-c_); }
    Octonion operator*(double s) const { return Octonion(c_ * s); }
    friend Octonion operator*(double s, const Octonion& o) { return o * s; }

    /// Cayley product (non-associative).
    Octonion operator*(const Octonion& o) const;

private:
    Vec8 c_;
};

inline Octonion multiply(const Octonion& x, const Octonion& y) { return x * y; }

/// (xy)z - x(yz)
Octonion associator(const Octonion& x, const Octonion& y, const Octonion& z);
/// xy - yx
Octonion commutator(const Octonion& x, const Octonion& y);

/// <x, y> = -Re(xy) on Im O. Equals the Euclidean dot product.
double im_inner(const Vec7& x, const Vec7& y);

/// Imaginary part of the product of two imaginary octonions.
Vec7 im_product(const Vec7& x, const Vec7& y);

/// Matrix of y -> Im(y x) on Im O. For unit x it is skew, kills x, and squares
/// to minus the projection onto the orthogonal complement of x.
Mat7 right_mul_operator(const Vec7& x);

/// Matrix of y -> Im(x y) on Im O.
Mat7 left_mul_operator(const Vec7& x);

/// A 7x7 matrix expected to be special orthogonal. Construction validates;
/// use `unchecked` when a possibly corrupted matrix must be carried around for
/// diagnostics.
class Rotation7
{
public:
    Rotation7() : m_(Mat7::Identity()) {}

    /// Throws InvalidArgument if the matrix is not in SO(7) within `tol`.
    explicit Rotation7(const Mat7& m, double tol = 1e-9);

    static Rotation7 unchecked(const Mat7& m)
    {
        Rotation7 r;
        r.m_ = m;
        return r;
    }

    const Mat7& matrix() const { return m_; }
    Vec7 operator()(const Vec7& v) const { return m_ * v; }
    Rotation7 operator*(const Rotation7& o) const { return unchecked(m_ * o.m_); }
    Rotation7 inverse() const { return unchecked(m_.transpose()); }

    /// max |A^T A - I|
    double orthogonality_residual() const;
    double determinant() const { return m_.determinant(); }

private:
    Mat7 m_;
};

/// Skew-symmetric 7x7 matrix satisfying the Leibniz rule on Im O.
class Derivation
{
public:
    Derivation() : m_(Mat7::Zero()) {}

    /// Throws LeibnizViolation if the matrix fails the Leibniz test at `tol`.
    explicit Derivation(const Mat7& m, double tol = 1e-10);

    const Mat7& matrix() const { return m_; }
    Derivation operator*(double s) const;
    Derivation operator+(const Derivation& o) const;
    Rotation7 exp() const;

private:
    Mat7 m_;
};

/// max over basis pairs of |D(ab) - D(a)b - aD(b)|, D extended by D(1) = 0.
double leibniz_residual(const Mat7& d);

/// D_{a,b}(z) = [[a,b],z] - 3 (a,b,z), the inner derivation of Im O.
Derivation standard_derivation(const Vec7& a, const Vec7& b);

/// Largest product defect max |A(e_i e_j) - A(e_i) A(e_j)| over all 64 basis
/// pairs, with A extended to O by fixing 1.
double automorphism_defect(const Mat7& a);

bool is_g2(const Rotation7& a, double tol = 1e-9);

/// Haar-distributed element of SO(7).
Rotation7 random_rotation(Rng& rng);
/// Haar-distributed rotation of R^7 fixing the unit vector `axis` (an SO(6)).
Rotation7 random_rotation_about(const Vec7& axis, Rng& rng);

/// dim 7: Haar SO(7). dim 6: Haar SO(6) acting on the complement of e7.
Rotation7 random_rotation(int dim, std::uint64_t seed);

/// exp(D_n) ... exp(D_1): the first step acts first.
Rotation7 g2_from_derivations(std::span<const Derivation> steps);

/// Product of `steps` exponentials of random standard derivations.
Rotation7 random_g2(Rng& rng, int steps = 4);
Rotation7 random_g2(std::uint64_t seed, int steps = 4);

} // namespace nks6
