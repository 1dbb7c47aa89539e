#include "nks6/forms.hpp"

#include "nks6/errors.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <string>

namespace nks6 {

namespace {

struct IndexTables
{
    // masks[dim][degree]
    std::array<std::array<std::vector<std::uint32_t>, kMaxFormDim + 1>, kMaxFormDim + 1> masks;
    // rank[dim][mask]
    std::array<std::array<int, 1u << kMaxFormDim>, kMaxFormDim + 1> rank{};
};

void enumerate(int dim, int degree, int start, std::uint32_t mask, std::vector<std::uint32_t>& out)
{
    if (degree == 0) {
        out.push_back(mask);
        return;
    }
    for (int i = start; i <= dim - degree; ++i) {
        enumerate(dim, degree - 1, i + 1, mask | (1u << i), out);
    }
}

const IndexTables& tables()
{
    static const IndexTables t = [] {
        IndexTables out;
        for (int dim = 0; dim <= kMaxFormDim; ++dim) {
            out.rank[dim].fill(-1);
            for (int k = 0; k <= dim; ++k) {
                enumerate(dim, k, 0, 0u, out.masks[dim][k]);
                const auto& ms = out.masks[dim][k];
                for (std::size_t r = 0; r < ms.size(); ++r) {
                    out.rank[dim][ms[r]] = static_cast<int>(r);
                }
            }
        }
        return out;
    }();
    return t;
}

std::vector<int> indices_of(std::uint32_t mask)
{
    std::vector<int> idx;
    for (int i = 0; i < kMaxFormDim; ++i) {
        if (mask & (1u << i)) {
            idx.push_back(i);
        }
    }
    return idx;
}

// Sign of the shuffle putting the indices of `a` before those of `b`.
double shuffle_sign(std::uint32_t a, std::uint32_t b)
{
    int inversions = 0;
    for (int j = 0; j < kMaxFormDim; ++j) {
        if (b & (1u << j)) {
            // elements of a greater than j
            inversions += std::popcount(a & ~((2u << j) - 1u));
        }
    }
    return (inversions % 2 == 0) ? 1.0 : -1.0;
}

void check_dim_degree(int dim, int degree)
{
    if (dim < 0 || dim > kMaxFormDim || degree < 0 || degree > dim) {
        throw InvalidArgument("form shape out of range: dim " + std::to_string(dim) + ", degree " +
                              std::to_string(degree));
    }
}

} // namespace

const std::vector<std::uint32_t>& index_masks(int dim, int degree)
{
    check_dim_degree(dim, degree);
    return tables().masks[dim][degree];
}

int mask_rank(int dim, std::uint32_t mask)
{
    const int r = tables().rank[dim][mask];
    if (r < 0) {
        throw InvalidArgument("index mask outside the form's dimension");
    }
    return r;
}

AlternatingForm::AlternatingForm(int dim, int degree) : dim_(dim), degree_(degree)
{
    coeffs_.assign(index_masks(dim, degree).size(), 0.0);
}

AlternatingForm::AlternatingForm(int dim, int degree, std::vector<double> coefficients)
    : dim_(dim), degree_(degree), coeffs_(std::move(coefficients))
{
    if (coeffs_.size() != index_masks(dim, degree).size()) {
        throw InvalidArgument("coefficient count does not match C(dim, degree)");
    }
}

AlternatingForm AlternatingForm::basis(int dim, std::initializer_list<int> indices)
{
    return basis(dim, std::span<const int>(indices.begin(), indices.size()));
}

AlternatingForm AlternatingForm::basis(int dim, std::span<const int> indices)
{
    AlternatingForm f(dim, static_cast<int>(indices.size()));
    std::uint32_t mask = 0;
    int inversions = 0;
    for (std::size_t a = 0; a < indices.size(); ++a) {
        const int i = indices[a];
        if (i < 0 || i >= dim || (mask & (1u << i))) {
            return f;  // repeated index: the zero form
        }
        mask |= 1u << i;
        for (std::size_t b = a + 1; b < indices.size(); ++b) {
            inversions += indices[b] < i ? 1 : 0;
        }
    }
    f.coefficient(mask) = (inversions % 2 == 0) ? 1.0 : -1.0;
    return f;
}

AlternatingForm AlternatingForm::covector(const Eigen::VectorXd& v)
{
    AlternatingForm f(static_cast<int>(v.size()), 1);
    for (int i = 0; i < v.size(); ++i) {
        f.coeffs_[static_cast<std::size_t>(i)] = v[i];
    }
    return f;
}

AlternatingForm AlternatingForm::volume(int dim)
{
    AlternatingForm f(dim, dim);
    f.coeffs_[0] = 1.0;
    return f;
}

double AlternatingForm::evaluate(const Eigen::MatrixXd& vectors) const
{
    if (vectors.rows() != dim_ || vectors.cols() != degree_) {
        throw InvalidArgument("evaluate: expected dim x degree matrix of vectors");
    }
    if (degree_ == 0) {
        return coeffs_[0];
    }
    const auto& masks = index_masks(dim_, degree_);
    double total = 0.0;
    Eigen::MatrixXd minor(degree_, degree_);
    for (std::size_t r = 0; r < masks.size(); ++r) {
        if (coeffs_[r] == 0.0) {
            continue;
        }
        const auto rows = indices_of(masks[r]);
        for (int a = 0; a < degree_; ++a) {
            minor.row(a) = vectors.row(rows[static_cast<std::size_t>(a)]);
        }
        total += coeffs_[r] * minor.determinant();
    }
    return total;
}

void AlternatingForm::check_same_shape(const AlternatingForm& o) const
{
    if (dim_ != o.dim_ || degree_ != o.degree_) {
        throw InvalidArgument("forms of different shape");
    }
}

AlternatingForm AlternatingForm::operator+(const AlternatingForm& o) const
{
    AlternatingForm r = *this;
    r += o;
    return r;
}

AlternatingForm& AlternatingForm::operator+=(const AlternatingForm& o)
{
    check_same_shape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += o.coeffs_[i];
    }
    return *this;
}

AlternatingForm AlternatingForm::operator-(const AlternatingForm& o) const { return *this + o * -1.0; }

AlternatingForm AlternatingForm::operator*(double s) const
{
    AlternatingForm r = *this;
    for (double& c : r.coeffs_) {
        c *= s;
    }
    return r;
}

double AlternatingForm::max_abs() const
{
    double m = 0.0;
    for (double c : coeffs_) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

double AlternatingForm::dot(const AlternatingForm& o) const
{
    check_same_shape(o);
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        s += coeffs_[i] * o.coeffs_[i];
    }
    return s;
}

AlternatingForm wedge(const AlternatingForm& a, const AlternatingForm& b)
{
    if (a.dim() != b.dim()) {
        throw InvalidArgument("wedge: forms live on different spaces");
    }
    const int degree = a.degree() + b.degree();
    if (degree > a.dim()) {
        throw DegreeOverflow("degree " + std::to_string(degree) + " exceeds dimension " +
                             std::to_string(a.dim()));
    }
    AlternatingForm out(a.dim(), degree);
    const auto& ma = index_masks(a.dim(), a.degree());
    const auto& mb = index_masks(b.dim(), b.degree());
    for (std::size_t i = 0; i < ma.size(); ++i) {
        if (a[i] == 0.0) {
            continue;
        }
        for (std::size_t j = 0; j < mb.size(); ++j) {
            if ((ma[i] & mb[j]) != 0u || b[j] == 0.0) {
                continue;
            }
            out.coefficient(ma[i] | mb[j]) += shuffle_sign(ma[i], mb[j]) * a[i] * b[j];
        }
    }
    return out;
}

AlternatingForm interior(const Eigen::VectorXd& x, const AlternatingForm& a)
{
    if (a.degree() < 1) {
        throw InvalidArgument("interior: cannot contract a 0-form");
    }
    if (x.size() != a.dim()) {
        throw InvalidArgument("interior: vector dimension mismatch");
    }
    AlternatingForm out(a.dim(), a.degree() - 1);
    const auto& masks = index_masks(a.dim(), a.degree());
    for (std::size_t r = 0; r < masks.size(); ++r) {
        if (a[r] == 0.0) {
            continue;
        }
        int position = 0;
        for (int i = 0; i < a.dim(); ++i) {
            const std::uint32_t bit = 1u << i;
            if (!(masks[r] & bit)) {
                continue;
            }
            const double sign = (position % 2 == 0) ? 1.0 : -1.0;
            out.coefficient(masks[r] & ~bit) += sign * x[i] * a[r];
            ++position;
        }
    }
    return out;
}

AlternatingForm pullback(const AlternatingForm& a, const Eigen::MatrixXd& m)
{
    if (m.rows() != a.dim()) {
        throw InvalidArgument("pullback: map codomain does not match the form");
    }
    const int target = static_cast<int>(m.cols());
    const int k = a.degree();
    if (k > target) {
        throw DegreeOverflow("pullback: degree exceeds the source dimension");
    }
    AlternatingForm out(target, k);
    if (k == 0) {
        out[0] = a[0];
        return out;
    }
    const auto& src = index_masks(a.dim(), k);
    const auto& dst = index_masks(target, k);
    Eigen::MatrixXd minor(k, k);
    for (std::size_t j = 0; j < dst.size(); ++j) {
        const auto cols = indices_of(dst[j]);
        double value = 0.0;
        for (std::size_t i = 0; i < src.size(); ++i) {
            if (a[i] == 0.0) {
                continue;
            }
            const auto rows = indices_of(src[i]);
            for (int r = 0; r < k; ++r) {
                for (int c = 0; c < k; ++c) {
                    minor(r, c) = m(rows[static_cast<std::size_t>(r)], cols[static_cast<std::size_t>(c)]);
                }
            }
            value += a[i] * minor.determinant();
        }
        out[j] = value;
    }
    return out;
}

double max_abs_diff(const AlternatingForm& a, const AlternatingForm& b) { return (a - b).max_abs(); }

} // namespace nks6
