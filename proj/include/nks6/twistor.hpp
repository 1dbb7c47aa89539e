#pragma once

#include "nks6/cayley.hpp"

#include <array>
#include <optional>
#include <vector>

namespace nks6 {

inline constexpr const char* kFamilyConvention = "lambda-left-v1";

/// Period of the family parameter: lambda(2 pi / 3) lies in SU(3) = G2 cap SO(6).
inline constexpr double kFamilyPeriod = 2.0 * 3.14159265358979323846 / 3.0;

/**
 * A point (p, J_p) of the twistor bundle: an orthogonal complex structure on
 * T_pS^6 inducing the orientation of R^7. Construction validates.
 */
class TwistorPoint
{
public:
    /// Throws InvalidArgument for a malformed operator, OrientationMismatch
    /// if J induces the opposite orientation.
    TwistorPoint(const SpherePoint& point, const Mat7& op, double tol = 1e-9);

    const SpherePoint& point() const { return point_; }
    const Mat7& op() const { return op_; }

private:
    SpherePoint point_;
    Mat7 op_;
};

/// Fiber value of a section, as a twistor point.
TwistorPoint twistor_point_of(const CayleyStructure& s, const SpherePoint& p);

/// Random point of the twistor bundle: uniform p, then the standard operator
/// conjugated by a Haar rotation fixing p.
TwistorPoint random_twistor_point(Rng& rng);

/// phi reduced into [0, 2 pi / 3).
class FamilyParameter
{
public:
    FamilyParameter() = default;
    explicit FamilyParameter(double phi);
    double value() const { return phi_; }

private:
    double phi_ = 0.0;
};

/// Signed distance between parameters on the circle of length 2 pi / 3.
double family_parameter_gap(double a, double b);

/// cos(phi) Id + sin(phi) R_p on T_pS^6, identity on the line through p.
Mat7 lambda_operator(const SpherePoint& p, double phi);

/// A rotation A fixing p with A^{-1} R_p A = J_p. Throws OrientationMismatch if
/// the adapted frames of J_p and R_p have opposite orientation.
CayleyStructure lift_to_cayley(const TwistorPoint& tp);

/// The one-parameter family of Cayley structures lambda(phi) A through a
/// twistor point.
class StructureFamily
{
public:
    explicit StructureFamily(const TwistorPoint& base);

    const TwistorPoint& base() const { return base_; }
    const Rotation7& lift() const { return lift_; }
    CayleyStructure member(double phi) const;
    CayleyStructure member(const FamilyParameter& phi) const { return member(phi.value()); }

private:
    TwistorPoint base_;
    Rotation7 lift_;
};

inline StructureFamily family_through(const TwistorPoint& tp) { return StructureFamily(tp); }

struct IntersectionCluster
{
    SpherePoint point;      ///< refined representative
    double residual = 0.0;  ///< operator-norm difference at the representative
    int hits = 0;           ///< refined seeds that landed in this cluster
};

struct IntersectionReport
{
    bool degenerate = false;  ///< every sample matched: the sections coincide
    int samples = 0;
    std::vector<IntersectionCluster> clusters;
    /// Smallest difference over samples farther than the cluster radius from
    /// every cluster.
    double min_generic_difference = 0.0;
    double max_sample_difference = 0.0;
};

/// Geodesic radius within which matches merge into one cluster.
inline constexpr double kClusterRadius = 0.05;

/**
 * Points where two sections agree. Samples `samples` uniform points, refines
 * the most promising ones by Gauss-Newton on the 49 matrix entries of the
 * difference, keeps refined points whose operator-norm difference is at most
 * `tol`, and clusters them.
 */
IntersectionReport intersection_scan(const CayleyStructure& a, const CayleyStructure& b, int samples, double tol,
                                     Rng& rng);

/// Tangent space of the graph of a section at (p, J_p): pairs (X, K) with K the
/// transported derivative of J along X.
struct SectionTangentSpace
{
    SpherePoint base;
    Mat7 op;
    Mat76 directions;              ///< the X's: positively oriented frame at p
    std::array<Mat7, 6> derivatives; ///< the K's, compressed to T_pS^6
};

/// Orthonormal basis (Frobenius) of the 6-dimensional space of skew
/// operators on T_pS^6 anticommuting with J.
std::array<Mat7, 6> fiber_tangent_basis(const SpherePoint& p, const Mat7& j);

/// Throws NotThroughPoint if the section misses tp by more than 1e-9.
SectionTangentSpace section_tangent(const CayleyStructure& s, const TwistorPoint& tp, double h = 1e-4);

/// Closed form P A^{-1} R_{AX} A P of the section derivative along X.
Mat7 section_derivative_closed_form(const CayleyStructure& s, const SpherePoint& p, const Vec7& x);

struct TransversalityReport
{
    int rank = 0;
    double min_singular_value = 0.0;
    std::vector<double> singular_values;
    bool transverse() const { return rank == 12; }
};

/// Rank of the two section tangent spaces stacked in T_pS^6 x (fiber tangent),
/// both in orthonormal coordinates. Singular values below `rank_tol` count as
/// zero.
TransversalityReport transversality_test(const CayleyStructure& a, const CayleyStructure& b,
                                         const TwistorPoint& tp, double h = 1e-4, double rank_tol = 1e-5);

struct MembershipReport
{
    bool member = false;
    std::optional<FamilyParameter> phi;
    double probe_distance = 0.0;  ///< distance at phi* over the probe points
    double max_difference = 0.0;  ///< certification: max over samples
};

/**
 * Finds phi* minimizing the distance between S and the family member at a few
 * probe points (coarse scan, golden-section, quadratic refinement), then
 * certifies with a sampled equality test at `tol`.
 */
MembershipReport membership_test(const CayleyStructure& s, const TwistorPoint& tp, int samples, double tol,
                                 Rng& rng);

} // namespace nks6
