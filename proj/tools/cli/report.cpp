#include "cli/report.hpp"

#include <nks6/octonion.hpp>
#include <nks6/twistor.hpp>

namespace nks6::cli {

const std::map<std::string, double>& default_tolerances()
{
    static const std::map<std::string, double> table = {
        // algebra
        {"composition", 1e-12},
        {"alternativity", 1e-12},
        {"moufang", 1e-11},
        {"inner_product", 1e-14},
        // cayley
        {"tangency", 1e-11},
        {"square", 1e-11},
        {"orthogonality", 1e-11},
        {"orientation", 0.0},
        {"g2_invariance", 1e-8},
        // nk
        {"nk_residual", 5e-7},
        {"nk_polarized", 1e-5},
        {"strictness_witness", 1e-2},
        {"convergence_order", 1.9},
        // lemma1
        {"lift_reproduces", 1e-10},
        {"lift_fixes_point", 1e-13},
        {"lift_rotation", 1e-12},
        // theorem1
        {"base_residual", 1e-10},
        {"distinctness", 1e-3},
        {"period", 1e-8},
        // lemma2
        {"cluster_count", 0.0},
        {"cluster_location", 1e-8},
        {"match_residual", 1e-10},
        {"separation", 1e-2},
        // lemma3
        {"rank_deficit", 0.0},
        {"min_singular_value", 1e-3},
        {"tangent_closed_form", 1e-6},
        {"fiber_anticommute", 1e-8},
        // lemma4
        {"uncertified", 0.0},
        {"phi_recovery", 1e-6},
        {"precondition_guard", 0.0},
        // hitchin
        {"k_square", 1e-10},
        {"standard_stability", 0.0},
        {"standard_j", 1e-12},
        {"lambda_fixes_j", 1e-10},
        {"lambda_rotate_consistency", 1e-12},
        {"rotate_equivariance", 1e-10},
        // pde
        {"cone_j", 1e-10},
        {"omega_wedge_psi", 1e-12},
        {"cone_metric", 1e-12},
        {"domega", 1e-6},
        {"dphi", 1e-5},
        {"mu_spread", 1e-5},
        {"mu_pinned", 1e-6},
    };
    return table;
}

double tolerance(const RunConfig& config, const std::string& name)
{
    if (const auto it = config.tolerances.find(name); it != config.tolerances.end()) {
        return it->second;
    }
    return default_tolerances().at(name);
}

void SuiteReport::add(const RunConfig& config, const std::string& name, double residual, Bound bound)
{
    Check c{name, residual, tolerance(config, name), bound, false};
    c.pass = bound == Bound::Upper ? residual <= c.threshold : residual > c.threshold;
    checks.push_back(c);
}

bool SuiteReport::passed() const
{
    for (const auto& c : checks) {
        if (!c.pass) {
            return false;
        }
    }
    return true;
}

Json SuiteReport::to_json() const
{
    Json list = Json::array();
    for (const auto& c : checks) {
        list.push_back({{"name", c.name},
                        {"residual", c.residual},
                        {"threshold", c.threshold},
                        {"bound", c.bound == Bound::Upper ? "max" : "min"},
                        {"pass", c.pass}});
    }
    return Json{{"suite", suite}, {"pass", passed()}, {"checks", list}, {"info", info}};
}

Json config_to_json(const RunConfig& config)
{
    Json tol = Json::object();
    for (const auto& [k, v] : default_tolerances()) {
        tol[k] = tolerance(config, k);
    }
    Json out{{"seed", config.seed}, {"samples", config.samples}, {"h", config.h}, {"tolerances", tol}};
    if (config.phi1) {
        out["phi1"] = *config.phi1;
    }
    if (config.phi2) {
        out["phi2"] = *config.phi2;
    }
    if (!config.structures.empty()) {
        out["structures"] = config.structures.size();
    }
    return out;
}

} // namespace nks6::cli
