#include "nks6/twistor.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nks6 {

namespace {

constexpr double kThroughPointTol = 1e-9;

void require_through(const CayleyStructure& s, const TwistorPoint& tp, const char* what)
{
    const double miss = (s.evaluate(tp.point()).matrix - tp.op()).cwiseAbs().maxCoeff();
    if (miss > kThroughPointTol) {
        std::ostringstream os;
        os << what << ": section misses the twistor point by " << miss;
        throw NotThroughPoint(os.str());
    }
}

Eigen::Matrix<double, 49, 1> vec(const Mat7& m)
{
    return Eigen::Map<const Eigen::Matrix<double, 49, 1>>(m.data());
}

double frobenius_inner(const Mat7& a, const Mat7& b) { return (a.array() * b.array()).sum(); }

} // namespace

TwistorPoint::TwistorPoint(const SpherePoint& point, const Mat7& op, double tol) : point_(point), op_(op)
{
    const FiberResiduals r = fiber_residuals(point_, op_);
    if (r.normal > tol || r.square > tol || r.skew > tol) {
        std::ostringstream os;
        os << "not an orthogonal complex structure on the tangent space (normal " << r.normal << ", square "
           << r.square << ", skew " << r.skew << ")";
        throw InvalidArgument(os.str());
    }
    if (r.orientation < 0) {
        throw OrientationMismatch("operator induces the orientation opposite to R^7");
    }
}

TwistorPoint twistor_point_of(const CayleyStructure& s, const SpherePoint& p)
{
    return TwistorPoint(p, s.evaluate(p).matrix);
}

TwistorPoint random_twistor_point(Rng& rng)
{
    const SpherePoint p = random_sphere_point(rng);
    const Mat7 h = random_rotation_about(p.vector(), rng).matrix();
    const Mat7 j = h * right_mul_operator(p.vector()) * h.transpose();
    const Mat7 proj = tangent_projector(p);
    return TwistorPoint(p, proj * j * proj);
}

FamilyParameter::FamilyParameter(double phi)
{
    if (!std::isfinite(phi)) {
        throw InvalidArgument("family parameter must be finite");
    }
    double r = std::fmod(phi, kFamilyPeriod);
    if (r < 0.0) {
        r += kFamilyPeriod;
    }
    if (r >= kFamilyPeriod) {
        r = 0.0;
    }
    phi_ = r;
}

double family_parameter_gap(double a, double b)
{
    double d = std::fmod(a - b, kFamilyPeriod);
    if (d > kFamilyPeriod / 2.0) {
        d -= kFamilyPeriod;
    } else if (d < -kFamilyPeriod / 2.0) {
        d += kFamilyPeriod;
    }
    return d;
}

Mat7 lambda_operator(const SpherePoint& p, double phi)
{
    const Vec7& v = p.vector();
    return v * v.transpose() + std::cos(phi) * tangent_projector(p) + std::sin(phi) * right_mul_operator(v);
}

CayleyStructure lift_to_cayley(const TwistorPoint& tp)
{
    const SpherePoint& p = tp.point();
    const Mat76 from = adapted_frame(p, tp.op());
    const Mat76 to = adapted_frame(p, right_mul_operator(p.vector()));
    if (frame_orientation(p, from) != frame_orientation(p, to)) {
        throw OrientationMismatch("fiber operator and standard structure induce opposite orientations");
    }
    const Mat7 a = to * from.transpose() + p.vector() * p.vector().transpose();
    return CayleyStructure(Rotation7::unchecked(a));
}

StructureFamily::StructureFamily(const TwistorPoint& base)
    : base_(base), lift_(lift_to_cayley(base).rotation())
{
}

CayleyStructure StructureFamily::member(double phi) const
{
    return CayleyStructure(Rotation7::unchecked(lambda_operator(base_.point(), phi) * lift_.matrix()));
}

namespace {

struct Refined
{
    SpherePoint point;
    double residual;
};

// Gauss-Newton with step halving on the entries of J_a - J_b, in geodesic
// normal coordinates re-centred at every iterate.
Refined refine_intersection(const CayleyStructure& a, const CayleyStructure& b, SpherePoint x)
{
    auto residual = [&](const SpherePoint& q) { return vec(a(q) - b(q)); };
    Eigen::Matrix<double, 49, 1> r = residual(x);
    constexpr double fd = 1e-7;
    for (int iter = 0; iter < 60 && r.norm() > 1e-15; ++iter) {
        const Mat76 frame = tangent_frame(x).columns;
        Eigen::Matrix<double, 49, 6> jac;
        for (int k = 0; k < 6; ++k) {
            jac.col(k) = (residual(geodesic(x, frame.col(k), fd)) - residual(geodesic(x, frame.col(k), -fd))) /
                         (2.0 * fd);
        }
        const Vec6 step = jac.colPivHouseholderQr().solve(-r);
        if (!step.allFinite() || step.norm() < 1e-16) {
            break;
        }
        double t = 1.0;
        bool moved = false;
        for (int halving = 0; halving < 30; ++halving, t *= 0.5) {
            const Vec7 dir = frame * (t * step);
            if (dir.norm() < 1e-13) {
                break;
            }
            const SpherePoint cand = geodesic(x, dir, 1.0);
            const auto rc = residual(cand);
            if (rc.norm() < r.norm()) {
                x = cand;
                r = rc;
                moved = true;
                break;
            }
        }
        if (!moved) {
            break;
        }
    }
    return Refined{x, operator_norm(a(x) - b(x))};
}

} // namespace

IntersectionReport intersection_scan(const CayleyStructure& a, const CayleyStructure& b, int samples, double tol,
                                     Rng& rng)
{
    if (samples < 1) {
        throw InvalidArgument("intersection_scan: samples must be >= 1");
    }
    IntersectionReport report;
    report.samples = samples;
    std::vector<SpherePoint> points;
    std::vector<double> diffs;
    points.reserve(static_cast<std::size_t>(samples));
    diffs.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        points.push_back(random_sphere_point(rng));
        diffs.push_back(operator_norm(a(points.back()) - b(points.back())));
    }
    report.max_sample_difference = *std::max_element(diffs.begin(), diffs.end());
    if (report.max_sample_difference <= tol) {
        report.degenerate = true;
        return report;
    }

    std::vector<std::size_t> order(diffs.size());
    std::iota(order.begin(), order.end(), 0);
    const std::size_t seeds = std::min<std::size_t>(64, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(seeds), order.end(),
                      [&](std::size_t i, std::size_t j) { return diffs[i] < diffs[j]; });

    for (std::size_t s = 0; s < seeds; ++s) {
        const Refined r = refine_intersection(a, b, points[order[s]]);
        if (r.residual > tol) {
            continue;
        }
        auto near = std::find_if(report.clusters.begin(), report.clusters.end(), [&](const IntersectionCluster& c) {
            return geodesic_distance(c.point, r.point) < kClusterRadius;
        });
        if (near == report.clusters.end()) {
            report.clusters.push_back(IntersectionCluster{r.point, r.residual, 1});
        } else {
            ++near->hits;
            if (r.residual < near->residual) {
                near->point = r.point;
                near->residual = r.residual;
            }
        }
    }

    report.min_generic_difference = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const bool generic = std::none_of(report.clusters.begin(), report.clusters.end(), [&](const auto& c) {
            return geodesic_distance(c.point, points[i]) < kClusterRadius;
        });
        if (generic) {
            report.min_generic_difference = std::min(report.min_generic_difference, diffs[i]);
        }
    }
    return report;
}

std::array<Mat7, 6> fiber_tangent_basis(const SpherePoint& p, const Mat7& j)
{
    const Mat76 frame = tangent_frame(p).columns;
    std::array<Mat7, 6> basis;
    int found = 0;
    for (int a = 0; a < 6 && found < 6; ++a) {
        for (int b = a + 1; b < 6 && found < 6; ++b) {
            const Mat7 e = frame.col(a) * frame.col(b).transpose() - frame.col(b) * frame.col(a).transpose();
            Mat7 k = 0.5 * (e + j * e * j);
            for (int pass = 0; pass < 2; ++pass) {
                for (int m = 0; m < found; ++m) {
                    k -= frobenius_inner(k, basis[static_cast<std::size_t>(m)]) * basis[static_cast<std::size_t>(m)];
                }
            }
            const double n = k.norm();
            if (n > 1e-8) {
                basis[static_cast<std::size_t>(found++)] = k / n;
            }
        }
    }
    if (found != 6) {
        throw InvalidArgument("fiber_tangent_basis: operator is not a complex structure on T_pS^6");
    }
    return basis;
}

SectionTangentSpace section_tangent(const CayleyStructure& s, const TwistorPoint& tp, double h)
{
    require_through(s, tp, "section_tangent");
    SectionTangentSpace out;
    out.base = tp.point();
    out.op = tp.op();
    out.directions = tangent_frame(tp.point()).columns;
    const Section field = as_section(s);
    for (int i = 0; i < 6; ++i) {
        out.derivatives[static_cast<std::size_t>(i)] =
            levi_civita_derivative(field, tp.point(), Vec7(out.directions.col(i)), h);
    }
    return out;
}

Mat7 section_derivative_closed_form(const CayleyStructure& s, const SpherePoint& p, const Vec7& x)
{
    const Mat7& a = s.rotation().matrix();
    const Mat7 proj = tangent_projector(p);
    return proj * a.transpose() * right_mul_operator(a * x) * a * proj;
}

TransversalityReport transversality_test(const CayleyStructure& a, const CayleyStructure& b,
                                         const TwistorPoint& tp, double h, double rank_tol)
{
    require_through(a, tp, "transversality_test");
    require_through(b, tp, "transversality_test");
    const auto basis = fiber_tangent_basis(tp.point(), tp.op());
    const SectionTangentSpace ta = section_tangent(a, tp, h);
    const SectionTangentSpace tb = section_tangent(b, tp, h);

    Eigen::Matrix<double, 12, 12> stacked = Eigen::Matrix<double, 12, 12>::Zero();
    for (int which = 0; which < 2; ++which) {
        const SectionTangentSpace& t = which == 0 ? ta : tb;
        for (int i = 0; i < 6; ++i) {
            const int col = which * 6 + i;
            stacked(i, col) = 1.0;  // X = i-th frame vector
            for (int m = 0; m < 6; ++m) {
                stacked(6 + m, col) =
                    frobenius_inner(t.derivatives[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(m)]);
            }
        }
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 12, 12>> svd(stacked);
    TransversalityReport report;
    const auto& sv = svd.singularValues();
    for (int i = 0; i < sv.size(); ++i) {
        report.singular_values.push_back(sv[i]);
        if (sv[i] > rank_tol) {
            ++report.rank;
        }
    }
    report.min_singular_value = sv[sv.size() - 1];
    return report;
}

namespace {

std::array<SpherePoint, 3> probe_points(const SpherePoint& p)
{
    const Mat76 f = tangent_frame(p).columns;
    const Vec7& v = p.vector();
    return {SpherePoint(Vec7(0.3 * v + f.col(0) + 0.5 * f.col(1))),
            SpherePoint(Vec7(-0.4 * v + f.col(2) + 0.7 * f.col(3) - 0.2 * f.col(4))),
            SpherePoint(Vec7(0.1 * v + f.col(5) - 0.6 * f.col(0) + 0.3 * f.col(3)))};
}

} // namespace

MembershipReport membership_test(const CayleyStructure& s, const TwistorPoint& tp, int samples, double tol,
                                 Rng& rng)
{
    require_through(s, tp, "membership_test");
    const StructureFamily family(tp);
    const auto probes = probe_points(tp.point());
    std::array<Mat7, 3> target;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        target[i] = s(probes[i]);
    }
    auto residual = [&](double phi) {
        const CayleyStructure m = family.member(phi);
        Eigen::Matrix<double, 147, 1> r;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            r.segment<49>(static_cast<Eigen::Index>(49 * i)) = vec(m(probes[i]) - target[i]);
        }
        return r;
    };
    auto distance = [&](double phi) { return residual(phi).squaredNorm(); };

    // Coarse scan over one period.
    constexpr int kCoarse = 96;
    const double step = kFamilyPeriod / kCoarse;
    double best_phi = 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kCoarse; ++i) {
        const double phi = i * step;
        const double d = distance(phi);
        if (d < best) {
            best = d;
            best_phi = phi;
        }
    }

    // Golden-section on the bracket around the best coarse point.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_phi - step;
    double hi = best_phi + step;
    double c = hi - invphi * (hi - lo);
    double d = lo + invphi * (hi - lo);
    double fc = distance(c);
    double fd = distance(d);
    while (hi - lo > 1e-9) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invphi * (hi - lo);
            fc = distance(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invphi * (hi - lo);
            fd = distance(d);
        }
    }
    double phi = 0.5 * (lo + hi);

    // Gauss-Newton on the residual vector: the minimizer of the local
    // quadratic model of the distance.
    for (int iter = 0; iter < 8; ++iter) {
        constexpr double fdh = 1e-6;
        const auto r = residual(phi);
        const auto dr = (residual(phi + fdh) - residual(phi - fdh)) / (2.0 * fdh);
        const double denom = dr.squaredNorm();
        if (denom < 1e-300) {
            break;
        }
        const double delta = -dr.dot(r) / denom;
        if (distance(phi + delta) > r.squaredNorm()) {
            break;
        }
        phi += delta;
        if (std::abs(delta) < 1e-15) {
            break;
        }
    }

    MembershipReport report;
    report.probe_distance = std::sqrt(distance(phi));
    const EqualityReport eq = structures_equal(family.member(phi), s, samples, tol, rng);
    report.max_difference = eq.max_difference;
    report.member = eq.equal;
    report.phi = FamilyParameter(phi);
    return report;
}

} // namespace nks6
