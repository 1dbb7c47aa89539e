#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace nks6 {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec7 = Eigen::Matrix<double, 7, 1>;
using Vec8 = Eigen::Matrix<double, 8, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat7 = Eigen::Matrix<double, 7, 7>;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Mat76 = Eigen::Matrix<double, 7, 6>;
using Mat67 = Eigen::Matrix<double, 6, 7>;

/// The single random engine used everywhere; every sampler takes it by reference
/// so one seed fixes a whole run.
using Rng = std::mt19937_64;

inline Vec7 gaussian_vec7(Rng& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Vec7 v;
    for (int i = 0; i < 7; ++i) {
        v[i] = n(rng);
    }
    return v;
}

inline double uniform(Rng& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Largest singular value.
template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& m)
{
    using Plain = typename Derived::PlainObject;
    const Plain dense = m;
    if (dense.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Plain> svd(dense);
    return svd.singularValues()(0);
}

/// Scaling-and-squaring Taylor exponential, accurate to roughly 1e-15 relative.
template <typename Derived>
Eigen::Matrix<double, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>
expm(const Eigen::MatrixBase<Derived>& a)
{
    using M = Eigen::Matrix<double, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
    const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    const M scaled = a / std::ldexp(1.0, squarings);
    M result = M::Identity(a.rows(), a.cols());
    M term = M::Identity(a.rows(), a.cols());
    for (int k = 1; k <= 30; ++k) {
        term = term * scaled / static_cast<double>(k);
        result += term;
        if (term.cwiseAbs().maxCoeff() < 1e-18) {
            break;
        }
    }
    for (int i = 0; i < squarings; ++i) {
        result = result * result;
    }
    return result;
}

} // namespace nks6
