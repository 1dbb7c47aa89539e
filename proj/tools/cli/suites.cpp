#include "cli/suites.hpp"

#include <nks6/cone.hpp>
#include <nks6/errors.hpp>
#include <nks6/hitchin.hpp>
#include <nks6/octonion.hpp>
#include <nks6/twistor.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace nks6::cli {

namespace {

/// Fitted value of mu in d phi_hat = -2 mu omega ^ omega on the unit sphere.
constexpr double kNearlyKahlerMu = 1.0;

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Each suite draws from its own stream so a suite run alone reproduces the
/// numbers it reports inside `all`.
Rng suite_rng(const RunConfig& config, const std::string& name)
{
    std::uint64_t h = 1469598103934665603ull;
    for (const char ch : name) {
        h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ull;
    }
    return Rng(config.seed ^ h);
}

int scaled(const RunConfig& config, double factor) { return std::max(1, static_cast<int>(config.samples * factor)); }

Octonion random_octonion(Rng& rng)
{
    std::normal_distribution<double> n(0.0, 1.0);
    Vec8 v;
    for (int i = 0; i < 8; ++i) {
        v[i] = n(rng);
    }
    return Octonion(v);
}

double dist(const Octonion& a, const Octonion& b) { return (a - b).coeffs().cwiseAbs().maxCoeff(); }

std::vector<CayleyStructure> structures_for(const RunConfig& config, Rng& rng, int count)
{
    if (!config.structures.empty()) {
        return config.structures;
    }
    std::vector<CayleyStructure> out;
    for (int i = 0; i < count; ++i) {
        out.emplace_back(random_rotation(rng));
    }
    return out;
}

Mat6 random_so6(Rng& rng) { return random_rotation_about(Vec7::Unit(6), rng).matrix().topLeftCorner<6, 6>(); }

SuiteReport algebra(const RunConfig& config)
{
    Rng rng = suite_rng(config, "algebra");
    const int n = scaled(config, 50.0);
    double composition = 0, alternativity = 0, moufang = 0, inner = 0;
    for (int i = 0; i < n; ++i) {
        const Octonion x = random_octonion(rng);
        const Octonion y = random_octonion(rng);
        const Octonion z = random_octonion(rng);
        composition = std::max(composition, std::abs((x * y).norm() - x.norm() * y.norm()) / (x.norm() * y.norm()));
        alternativity = std::max({alternativity, associator(x, x, y).coeffs().cwiseAbs().maxCoeff(),
                                  associator(y, x, x).coeffs().cwiseAbs().maxCoeff()});
        moufang = std::max({moufang, dist(z * (x * (z * y)), ((z * x) * z) * y),
                            dist(x * (z * (y * z)), ((x * z) * y) * z), dist((z * x) * (y * z), (z * (x * y)) * z)});
        const SpherePoint a = random_sphere_point(rng);
        const SpherePoint b = random_sphere_point(rng);
        inner = std::max(inner, std::abs(im_inner(a.vector(), b.vector()) - a.vector().dot(b.vector())));
    }
    SuiteReport r{"algebra", {}, Json{{"tuples", n}}};
    r.add(config, "composition", composition);
    r.add(config, "alternativity", alternativity);
    r.add(config, "moufang", moufang);
    r.add(config, "inner_product", inner);
    return r;
}

SuiteReport cayley(const RunConfig& config)
{
    Rng rng = suite_rng(config, "cayley");
    const auto structures = structures_for(config, rng, 10);
    const int points = scaled(config, 0.5);
    double tangency = 0, square = 0, orth = 0, wrong_orientation = 0, g2 = 0;
    for (const auto& s : structures) {
        const Rotation7 g = random_g2(rng);
        if (!is_g2(g)) {
            throw std::logic_error("random_g2 produced a non-automorphism");
        }
        const CayleyStructure moved(g * s.rotation());
        for (int i = 0; i < points; ++i) {
            const SpherePoint x = random_sphere_point(rng);
            const Mat7 j = s(x);
            const FiberResiduals f = fiber_residuals(x, j);
            tangency = std::max(tangency, f.normal);
            square = std::max(square, f.square);
            orth = std::max(orth, (j.transpose() * j - tangent_projector(x)).cwiseAbs().maxCoeff());
            wrong_orientation += f.orientation == 1 ? 0.0 : 1.0;
            g2 = std::max(g2, operator_norm(moved(x) - j));
        }
    }
    SuiteReport r{"cayley", {}, Json{{"structures", structures.size()}, {"points_per_structure", points}}};
    r.add(config, "tangency", tangency);
    r.add(config, "square", square);
    r.add(config, "orthogonality", orth);
    r.add(config, "orientation", wrong_orientation);
    r.add(config, "g2_invariance", g2);
    return r;
}

SuiteReport nearly_kahler(const RunConfig& config)
{
    Rng rng = suite_rng(config, "nk");
    const auto structures = structures_for(config, rng, 10);
    const int per = scaled(config, 2.5);
    double residual = 0, polarized = 0, witness = kInf, order = kInf;
    for (const auto& s : structures) {
        const NearlyKahlerReport nk = is_nearly_kahler(s, per, config.h, kInf, rng);
        residual = std::max(residual, nk.max_residual);
        polarized = std::max(polarized, nk.max_skew_residual);
        witness = std::min(witness, nk.strictness_witness);

        // Truncation error against the closed form at two steps large enough
        // to dominate rounding.
        const auto section = as_section(s);
        const SpherePoint p = random_sphere_point(rng);
        const Vec7 x = random_tangent(p, rng);
        const Mat7 exact = section_derivative_closed_form(s, p, x);
        const double e1 = (levi_civita_derivative(section, p, x, 1e-3) - exact).cwiseAbs().maxCoeff();
        const double e2 = (levi_civita_derivative(section, p, x, 5e-4) - exact).cwiseAbs().maxCoeff();
        order = std::min(order, std::log2(e1 / e2));
    }
    SuiteReport r{"nk", {}, Json{{"structures", structures.size()}, {"samples_per_structure", per}}};
    r.add(config, "nk_residual", residual);
    r.add(config, "nk_polarized", polarized);
    r.add(config, "strictness_witness", witness, Bound::Lower);
    r.add(config, "convergence_order", order, Bound::Lower);
    return r;
}

SuiteReport lemma1(const RunConfig& config)
{
    Rng rng = suite_rng(config, "lemma1");
    const int n = scaled(config, 0.5);
    double reproduces = 0, fixes = 0, rotation = 0;
    for (int i = 0; i < n; ++i) {
        const TwistorPoint tp = random_twistor_point(rng);
        const CayleyStructure lift = lift_to_cayley(tp);
        const Mat7& a = lift.rotation().matrix();
        reproduces = std::max(reproduces, (lift(tp.point()) - tp.op()).cwiseAbs().maxCoeff());
        fixes = std::max(fixes, (a * tp.point().vector() - tp.point().vector()).cwiseAbs().maxCoeff());
        rotation = std::max({rotation, lift.rotation().orthogonality_residual(), std::abs(a.determinant() - 1.0)});
    }
    SuiteReport r{"lemma1", {}, Json{{"points", n}}};
    r.add(config, "lift_reproduces", reproduces);
    r.add(config, "lift_fixes_point", fixes);
    r.add(config, "lift_rotation", rotation);
    return r;
}

SuiteReport theorem1(const RunConfig& config)
{
    Rng rng = suite_rng(config, "theorem1");
    const TwistorPoint tp = random_twistor_point(rng);
    const StructureFamily family(tp);
    constexpr int kValues = 32;
    std::vector<CayleyStructure> members;
    double base = 0;
    for (int k = 0; k < kValues; ++k) {
        members.push_back(family.member(kFamilyPeriod * k / kValues));
        base = std::max(base, (members.back()(tp.point()) - tp.op()).cwiseAbs().maxCoeff());
    }
    // Generic probes: random points away from +-p.
    std::vector<SpherePoint> probes;
    while (probes.size() < 3) {
        const SpherePoint q = random_sphere_point(rng);
        if (std::abs(q.vector().dot(tp.point().vector())) < 0.9) {
            probes.push_back(q);
        }
    }
    double distinct = kInf;
    for (int i = 0; i < kValues; ++i) {
        for (int j = i + 1; j < kValues; ++j) {
            double d = 0;
            for (const auto& q : probes) {
                d = std::max(d, operator_norm(members[i](q) - members[j](q)));
            }
            distinct = std::min(distinct, d);
        }
    }
    double period = 0;
    for (int k = 0; k < 4; ++k) {
        const double phi = uniform(rng, 0.0, kFamilyPeriod);
        const auto eq = structures_equal(family.member(phi), family.member(phi + kFamilyPeriod), config.samples,
                                         kInf, rng);
        period = std::max(period, eq.max_difference);
    }
    SuiteReport r{"theorem1", {}, Json{{"phi_values", kValues}, {"base", to_json(tp)}}};
    r.add(config, "base_residual", base);
    r.add(config, "distinctness", distinct, Bound::Lower);
    r.add(config, "period", period);
    return r;
}

/// phi1 and phi2 from the config when given, else phi2 = phi1 + delta with
/// delta kept away from the period.
std::pair<double, double> family_pair(const RunConfig& config, Rng& rng)
{
    const double phi1 = config.phi1 ? *config.phi1 : uniform(rng, 0.0, kFamilyPeriod);
    const double phi2 = config.phi2 ? *config.phi2 : phi1 + uniform(rng, 0.1, kFamilyPeriod - 0.1);
    return {phi1, phi2};
}

bool same_parameter(double a, double b) { return std::abs(family_parameter_gap(a, b)) < 1e-12; }

SuiteReport lemma2(const RunConfig& config)
{
    Rng rng = suite_rng(config, "lemma2");
    constexpr int kPairs = 20;
    const int samples = scaled(config, 50.0);
    SuiteReport r{"lemma2", {}, Json{{"pairs", kPairs}, {"samples_per_pair", samples}}};
    double count = 0, location = 0, match = 0, separation = kInf;
    int degenerate = 0;
    for (int i = 0; i < kPairs; ++i) {
        const TwistorPoint tp = random_twistor_point(rng);
        const StructureFamily family(tp);
        const auto [phi1, phi2] = family_pair(config, rng);
        if (same_parameter(phi1, phi2)) {
            ++degenerate;
            continue;
        }
        const IntersectionReport scan = intersection_scan(family.member(phi1), family.member(phi2), samples, 1e-8, rng);
        count = std::max(count, std::abs(static_cast<double>(scan.clusters.size()) - 2.0));
        for (const auto& c : scan.clusters) {
            const Vec7& v = c.point.vector();
            const Vec7& p = tp.point().vector();
            location = std::max(location, std::min((v - p).norm(), (v + p).norm()));
            match = std::max(match, c.residual);
        }
        // Residual at the exact points +-p, independent of the scan.
        for (const SpherePoint& q : {tp.point(), tp.point().antipode()}) {
            match = std::max(match, operator_norm(family.member(phi1)(q) - family.member(phi2)(q)));
        }
        separation = std::min(separation, scan.min_generic_difference);
    }
    if (degenerate > 0) {
        r.info["degenerate"] = "sections coincide (phi1 = phi2); intersection assertions skipped";
    }
    if (degenerate < kPairs) {
        r.add(config, "cluster_count", count);
        r.add(config, "cluster_location", location);
        r.add(config, "match_residual", match);
        r.add(config, "separation", separation, Bound::Lower);
    }
    return r;
}

SuiteReport lemma3(const RunConfig& config)
{
    Rng rng = suite_rng(config, "lemma3");
    const int n = scaled(config, 0.25);
    double deficit = 0, min_sv = kInf, tangent = 0, anticommute = 0;
    int degenerate = 0;
    Json ranks = Json::array();
    for (int i = 0; i < n; ++i) {
        const TwistorPoint tp = random_twistor_point(rng);
        const StructureFamily family(tp);
        const auto [phi1, phi2] = family_pair(config, rng);
        const CayleyStructure a = family.member(phi1);
        const CayleyStructure b = family.member(phi2);

        const SectionTangentSpace t = section_tangent(a, tp, config.h);
        for (int k = 0; k < 6; ++k) {
            const Mat7 exact = section_derivative_closed_form(a, tp.point(), t.directions.col(k));
            tangent = std::max(tangent, (t.derivatives[k] - exact).cwiseAbs().maxCoeff());
            anticommute = std::max(anticommute,
                                   (t.derivatives[k] * tp.op() + tp.op() * t.derivatives[k]).cwiseAbs().maxCoeff());
        }

        const TransversalityReport tr = transversality_test(a, b, tp, config.h);
        if (same_parameter(phi1, phi2)) {
            ++degenerate;
            ranks.push_back(tr.rank);
            continue;
        }
        deficit = std::max(deficit, 12.0 - tr.rank);
        min_sv = std::min(min_sv, tr.min_singular_value);
    }
    SuiteReport r{"lemma3", {}, Json{{"configurations", n}}};
    r.add(config, "tangent_closed_form", tangent);
    r.add(config, "fiber_anticommute", anticommute);
    if (degenerate > 0) {
        r.info["degenerate"] = "identical sections (phi1 = phi2); transversality not asserted";
        r.info["degenerate_ranks"] = ranks;
    }
    if (degenerate < n) {
        r.add(config, "rank_deficit", deficit);
        r.add(config, "min_singular_value", min_sv, Bound::Lower);
    }
    return r;
}

SuiteReport lemma4(const RunConfig& config)
{
    Rng rng = suite_rng(config, "lemma4");
    const int n = scaled(config, 0.25);
    const TwistorPoint tp = random_twistor_point(rng);
    const StructureFamily family(tp);
    double uncertified = 0, recovery = 0, unguarded = 0;
    for (int i = 0; i < n; ++i) {
        const double phi0 = uniform(rng, 0.0, kFamilyPeriod);
        const Rotation7 g = random_g2(rng);
        const CayleyStructure s(g * family.member(phi0).rotation());
        const MembershipReport m = membership_test(s, tp, 100, 1e-8, rng);
        if (!m.member || !m.phi) {
            uncertified += 1.0;
            continue;
        }
        recovery = std::max(recovery, std::abs(family_parameter_gap(m.phi->value(), phi0)));
    }
    // Structures that miss the point must be rejected, not reported as non-members.
    for (int i = 0; i < 5; ++i) {
        const CayleyStructure other(random_rotation(rng));
        try {
            membership_test(other, tp, 10, 1e-8, rng);
            unguarded += 1.0;
        } catch (const NotThroughPoint&) {
        }
    }
    SuiteReport r{"lemma4", {}, Json{{"structures", n}, {"base", to_json(tp)}}};
    r.add(config, "uncertified", uncertified);
    r.add(config, "phi_recovery", recovery);
    r.add(config, "precondition_guard", unguarded);
    return r;
}

SuiteReport hitchin_suite(const RunConfig& config)
{
    Rng rng = suite_rng(config, "hitchin");
    std::normal_distribution<double> gauss(0.0, 1.0);
    const AlternatingForm vol = AlternatingForm::volume(6);
    const int n = scaled(config, 1.0);
    double k_square = 0;
    int stable = 0;
    for (int i = 0; i < n; ++i) {
        AlternatingForm psi(6, 3);
        for (std::size_t c = 0; c < psi.size(); ++c) {
            psi[c] = gauss(rng);
        }
        const HitchinResult h = hitchin(psi, vol);
        k_square = std::max(k_square, h.square_residual());
        stable += h.stable() ? 1 : 0;
    }

    const ComplexVolume cv = standard_complex_volume();
    const Mat6 j0 = standard_complex_structure();
    const HitchinResult std_h = hitchin(cv.re, vol);
    const double standard_j = std_h.J ? (*std_h.J - j0).cwiseAbs().maxCoeff() : kInf;

    double lambda_j = 0, consistency = 0;
    for (int k = 0; k < 32; ++k) {
        const double phi = uniform(rng, 0.0, 2.0 * kFamilyPeriod);
        const AlternatingForm rotated = lambda_rotate(cv, phi);
        const HitchinResult h = hitchin(rotated, vol);
        lambda_j = std::max(lambda_j, h.J ? (*h.J - j0).cwiseAbs().maxCoeff() : kInf);
        consistency = std::max(consistency, max_abs_diff(rotated, lambda_pullback(cv.re, j0, phi)));
    }

    const AlternatingForm omega = [] {
        AlternatingForm w(6, 2);
        for (int k = 0; k < 3; ++k) {
            w += AlternatingForm::basis(6, {k, k + 3});
        }
        return w;
    }();
    const SU3Structure s = make_su3(omega, cv.re, vol);
    double equivariance = 0;
    for (int k = 0; k < 20; ++k) {
        const Mat6 a = random_so6(rng);
        const SU3Structure moved = rotate_su3(s, a);
        const HitchinResult h = hitchin(moved.psi, vol);
        equivariance = std::max(equivariance, h.J ? (*h.J - a * s.J * a.transpose()).cwiseAbs().maxCoeff() : kInf);
    }

    SuiteReport r{"hitchin", {}, Json{{"random_forms", n}, {"stable_fraction", double(stable) / n}, {"tau", std_h.tau}}};
    r.add(config, "k_square", k_square);
    r.add(config, "standard_stability", -std_h.tau, Bound::Lower);
    r.add(config, "standard_j", standard_j);
    r.add(config, "lambda_fixes_j", lambda_j);
    r.add(config, "lambda_rotate_consistency", consistency);
    r.add(config, "rotate_equivariance", equivariance);
    return r;
}

SuiteReport pde(const RunConfig& config)
{
    Rng rng = suite_rng(config, "pde");
    const int cone_points = scaled(config, 0.5);
    double cone_j = 0, wedge_res = 0, metric = 0;
    for (int i = 0; i < cone_points; ++i) {
        const SpherePoint p = random_sphere_point(rng);
        const Rotation7 a = i % 2 == 0 ? Rotation7() : random_rotation(rng);
        const ConeStructure c = cone_extract(p, a);
        cone_j = std::max(cone_j, (c.ambient_J() - CayleyStructure(a)(p)).cwiseAbs().maxCoeff());
        wedge_res = std::max(wedge_res, wedge(c.su3.omega, c.su3.psi).max_abs());
        metric = std::max(metric, (c.su3.metric - Mat6::Identity()).cwiseAbs().maxCoeff());
    }

    const int pde_points = scaled(config, 0.1);
    double domega = 0, dphi = 0, mu_lo = kInf, mu_hi = -kInf;
    Json mus = Json::array();
    for (int i = 0; i < pde_points; ++i) {
        const PdeReport rep = nk_pde_check(random_sphere_point(rng), config.h);
        domega = std::max(domega, rep.residual_domega);
        dphi = std::max(dphi, rep.residual_dphi);
        mu_lo = std::min(mu_lo, rep.mu);
        mu_hi = std::max(mu_hi, rep.mu);
        mus.push_back(rep.mu);
    }
    SuiteReport r{"pde", {}, Json{{"cone_points", cone_points}, {"pde_points", pde_points}, {"mu", mus}}};
    r.add(config, "cone_j", cone_j);
    r.add(config, "omega_wedge_psi", wedge_res);
    r.add(config, "cone_metric", metric);
    r.add(config, "domega", domega);
    r.add(config, "dphi", dphi);
    r.add(config, "mu_spread", mu_hi - mu_lo);
    r.add(config, "mu_pinned", std::max(std::abs(mu_hi - kNearlyKahlerMu), std::abs(mu_lo - kNearlyKahlerMu)));
    return r;
}

using SuiteFn = std::function<SuiteReport(const RunConfig&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry()
{
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"algebra", algebra}, {"cayley", cayley}, {"nk", nearly_kahler}, {"lemma1", lemma1},
        {"theorem1", theorem1}, {"lemma2", lemma2}, {"lemma3", lemma3}, {"lemma4", lemma4},
        {"hitchin", hitchin_suite}, {"pde", pde},
    };
    return table;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) {
            out.push_back(name);
        }
        return out;
    }();
    return names;
}

SuiteReport run_suite(const std::string& name, const RunConfig& config)
{
    for (const auto& [n, fn] : registry()) {
        if (n == name) {
            return fn(config);
        }
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

} // namespace nks6::cli
