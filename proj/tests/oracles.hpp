#pragma once

// Reference implementations kept deliberately naive and independent of the
// library code paths they check.

#include <nks6/forms.hpp>
#include <nks6/linalg.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

inline Vec cd_conj(const Vec& x)
{
    Vec out(x.size());
    out[0] = x[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
        out[i] = -x[i];
    }
    return out;
}

/// Cayley-Dickson product built recursively from the reals:
/// (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c)).
inline Vec cd_mul(const Vec& x, const Vec& y)
{
    const std::size_t n = x.size();
    if (n == 1) {
        return {x[0] * y[0]};
    }
    const std::size_t h = n / 2;
    const Vec a(x.begin(), x.begin() + h), b(x.begin() + h, x.end());
    const Vec c(y.begin(), y.begin() + h), d(y.begin() + h, y.end());
    const Vec ac = cd_mul(a, c), db = cd_mul(cd_conj(d), b);
    const Vec da = cd_mul(d, a), bc = cd_mul(b, cd_conj(c));
    Vec out(n);
    for (std::size_t i = 0; i < h; ++i) {
        out[i] = ac[i] - db[i];
        out[h + i] = da[i] + bc[i];
    }
    return out;
}

inline Vec to_vec(const nks6::Vec8& v) { return Vec(v.data(), v.data() + 8); }

inline nks6::Vec8 octonion_product(const nks6::Vec8& x, const nks6::Vec8& y)
{
    const Vec p = cd_mul(to_vec(x), to_vec(y));
    return Eigen::Map<const nks6::Vec8>(p.data());
}

/// Im(x y) for imaginary x, y given in R^7.
inline nks6::Vec7 im_mul(const nks6::Vec7& x, const nks6::Vec7& y)
{
    nks6::Vec8 a = nks6::Vec8::Zero(), b = nks6::Vec8::Zero();
    a.tail<7>() = x;
    b.tail<7>() = y;
    return octonion_product(a, b).tail<7>();
}

inline int permutation_sign(std::vector<int> p)
{
    int sign = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (p[i] != static_cast<int>(i)) {
            std::swap(p[i], p[p[i]]);
            sign = -sign;
        }
    }
    return sign;
}

/// Value of a form on the columns of `v` by full multilinear expansion over
/// all ordered tuples of distinct indices.
inline double evaluate(const nks6::AlternatingForm& f, const Eigen::MatrixXd& v)
{
    const int n = f.dim();
    const int k = f.degree();
    if (k == 0) {
        return f[0];
    }
    double total = 0.0;
    std::vector<int> idx(k, 0);
    while (true) {
        std::vector<int> sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
            std::uint32_t mask = 0;
            for (int i : idx) {
                mask |= 1u << i;
            }
            // Sign of the permutation taking sorted order to idx.
            std::vector<int> perm(k);
            for (int j = 0; j < k; ++j) {
                perm[j] = static_cast<int>(std::find(sorted.begin(), sorted.end(), idx[j]) - sorted.begin());
            }
            double term = permutation_sign(perm) * f.coefficient(mask);
            for (int j = 0; j < k; ++j) {
                term *= v(idx[j], j);
            }
            total += term;
        }
        int pos = k - 1;
        while (pos >= 0 && ++idx[pos] == n) {
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) {
            break;
        }
    }
    return total;
}

inline double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

/// (a ^ b)(v) = 1/(k! l!) sum over permutations of sign * a(...) b(...).
inline double wedge_value(const nks6::AlternatingForm& a, const nks6::AlternatingForm& b, const Eigen::MatrixXd& v)
{
    const int k = a.degree();
    const int l = b.degree();
    std::vector<int> perm(k + l);
    std::iota(perm.begin(), perm.end(), 0);
    double total = 0.0;
    do {
        Eigen::MatrixXd va(v.rows(), k), vb(v.rows(), l);
        for (int j = 0; j < k; ++j) {
            va.col(j) = v.col(perm[j]);
        }
        for (int j = 0; j < l; ++j) {
            vb.col(j) = v.col(perm[k + j]);
        }
        total += permutation_sign(perm) * evaluate(a, va) * evaluate(b, vb);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total / (factorial(k) * factorial(l));
}

inline nks6::AlternatingForm random_form(int dim, int degree, nks6::Rng& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    nks6::AlternatingForm f(dim, degree);
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = n(rng);
    }
    return f;
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, nks6::Rng& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = n(rng);
        }
    }
    return m;
}

/// Right multiplication on the tangent space at p: X -> P Im(X p).
inline nks6::Mat7 standard_structure(const nks6::Vec7& p)
{
    nks6::Mat7 j;
    for (int i = 0; i < 7; ++i) {
        j.col(i) = im_mul(nks6::Vec7::Unit(i), p);
    }
    const nks6::Mat7 proj = nks6::Mat7::Identity() - p * p.transpose();
    return proj * j * proj;
}

} // namespace oracle
