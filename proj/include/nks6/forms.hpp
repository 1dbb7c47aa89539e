#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace nks6 {

/// Largest supported ambient dimension. Index tuples are stored as bitmasks.
inline constexpr int kMaxFormDim = 8;

/// Strictly increasing index tuples of size `degree` in {0..dim-1}, as
/// bitmasks, in lexicographic order of the tuples.
const std::vector<std::uint32_t>& index_masks(int dim, int degree);
/// Inverse of `index_masks`: position of `mask` in the lex order.
int mask_rank(int dim, std::uint32_t mask);

/**
 * Alternating k-linear form on R^dim, stored by its values on the basis
 * tuples (e_i1, ..., e_ik) with i1 < ... < ik, lexicographically ordered.
 * The basis form e^{i1} ^ ... ^ e^{ik} has coefficient 1 on its own tuple.
 */
class AlternatingForm
{
public:
    AlternatingForm() = default;
    AlternatingForm(int dim, int degree);
    AlternatingForm(int dim, int degree, std::vector<double> coefficients);

    /// e^{i1} ^ ... ^ e^{ik}; indices need not be sorted (the sign follows).
    static AlternatingForm basis(int dim, std::initializer_list<int> indices);
    static AlternatingForm basis(int dim, std::span<const int> indices);
    /// The dual 1-form of a vector.
    static AlternatingForm covector(const Eigen::VectorXd& v);
    /// e^1 ^ ... ^ e^dim
    static AlternatingForm volume(int dim);

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    std::size_t size() const { return coeffs_.size(); }
    std::span<const double> coefficients() const { return coeffs_; }

    double coefficient(std::uint32_t mask) const { return coeffs_[mask_rank(dim_, mask)]; }
    double& coefficient(std::uint32_t mask) { return coeffs_[mask_rank(dim_, mask)]; }
    double operator[](std::size_t rank) const { return coeffs_[rank]; }
    double& operator[](std::size_t rank) { return coeffs_[rank]; }

    /// Value on the columns of a dim x degree matrix.
    double evaluate(const Eigen::MatrixXd& vectors) const;

    AlternatingForm operator+(const AlternatingForm& o) const;
    AlternatingForm operator-(const AlternatingForm& o) const;
    AlternatingForm operator-() const { return *this * -1.0; }
    AlternatingForm operator*(double s) const;
    friend AlternatingForm operator*(double s, const AlternatingForm& f) { return f * s; }
    AlternatingForm& operator+=(const AlternatingForm& o);

    double max_abs() const;
    /// Euclidean inner product of coefficient vectors.
    double dot(const AlternatingForm& o) const;

private:
    void check_same_shape(const AlternatingForm& o) const;

    int dim_ = 0;
    int degree_ = 0;
    std::vector<double> coeffs_;
};

/// Antisymmetrized product with (e^1 ^ e^2)(e_1, e_2) = 1 normalization.
/// Throws DegreeOverflow if the degrees sum past the dimension.
AlternatingForm wedge(const AlternatingForm& a, const AlternatingForm& b);

/// Contraction in the first slot. Throws InvalidArgument on a 0-form.
AlternatingForm interior(const Eigen::VectorXd& x, const AlternatingForm& a);

/// (M^* a)(w1, ..., wk) = a(M w1, ..., M wk) for M of size a.dim() x m.
AlternatingForm pullback(const AlternatingForm& a, const Eigen::MatrixXd& m);

/// max |a - b| over coefficients.
double max_abs_diff(const AlternatingForm& a, const AlternatingForm& b);

} // namespace nks6
