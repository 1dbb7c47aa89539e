#include "cli/commands.hpp"

#include "cli/suites.hpp"

#include <nks6/cone.hpp>
#include <nks6/errors.hpp>
#include <nks6/serialization.hpp>
#include <nks6/twistor.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace nks6::cli {

namespace {

/// Input the user asked for could not be read or has the wrong shape.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

Json conventions() { return Json{{"octonion", kOctonionConvention}, {"family", kFamilyConvention}}; }

Json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError("'" + path + "' is not valid JSON: " + e.what());
    }
}

/// A single structure document, or the first entry of a `gen` list.
std::vector<CayleyStructure> read_structures(const std::string& path)
{
    const Json j = read_json(path);
    std::vector<CayleyStructure> out;
    if (j.is_object() && j.contains("structures")) {
        if (!j["structures"].is_array() || j["structures"].empty()) {
            throw SchemaError("'structures' must be a non-empty array");
        }
        for (const auto& s : j["structures"]) {
            out.push_back(structure_from_json(s));
        }
    } else {
        out.push_back(structure_from_json(j));
    }
    return out;
}

void emit(const Json& report, const std::string& path, std::ostream& out)
{
    const std::string text = report.dump(2) + "\n";
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f || !(f << text)) {
        throw UsageError("cannot write '" + path + "'");
    }
}

TwistorPoint point_spec(const std::string& file, bool random, std::uint64_t seed)
{
    if (random == !file.empty()) {
        throw UsageError("give exactly one of --point FILE or --random");
    }
    if (random) {
        Rng rng(seed);
        return random_twistor_point(rng);
    }
    const Json j = read_json(file);
    try {
        return twistor_point_from_json(j);
    } catch (const GeometryError& e) {
        throw UsageError(std::string("malformed twistor point: ") + e.what());
    }
}

std::string flag_name(const std::string& check)
{
    std::string s = check;
    std::replace(s.begin(), s.end(), '_', '-');
    return "--tol-" + s;
}

void check_format(const std::string& format)
{
    if (format != "json") {
        throw UsageError("unsupported format '" + format + "' (only json)");
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Cayley structures and nearly Kaehler geometry on S^6"};
    app.require_subcommand(1);
    // "--h" is the step size, so help is long-form only.
    app.set_help_flag("--help", "print help");

    RunConfig config;
    std::string format = "json";
    std::map<std::string, double> tol_values;
    std::string suite, structures_file, point_file, file_a, file_b;
    bool random = false;
    int count = 1;
    int grid = 2000;
    double scan_tol = 1e-8;
    std::vector<double> phis;
    std::vector<double> coords;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
        sub->add_option("--out", config.out, "write the JSON report to this file");
        sub->add_option("--format", format, "output format")->capture_default_str();
    };

    CLI::App* gen = app.add_subcommand("gen", "Haar-sampled Cayley structures");
    common(gen);
    gen->add_option("--count", count, "number of structures")->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    common(verify);
    std::vector<std::string> choices = suite_names();
    choices.push_back("all");
    verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(choices));
    verify->add_option("--samples", config.samples, "sample scale")->capture_default_str();
    verify->add_option("--h", config.h, "finite-difference step")->capture_default_str();
    verify->add_option("--phi1", config.phi1, "first family parameter (lemma2, lemma3)");
    verify->add_option("--phi2", config.phi2, "second family parameter (lemma2, lemma3)");
    verify->add_option("--structures", structures_file, "structures for the cayley and nk suites");
    for (const auto& [name, value] : default_tolerances()) {
        verify->add_option(flag_name(name), tol_values[name], "threshold for check " + name);
    }

    CLI::App* family = app.add_subcommand("family", "evaluate the family through a twistor point");
    common(family);
    family->add_option("--point", point_file, "serialized twistor point");
    family->add_flag("--random", random, "use a random twistor point from --seed");
    family->add_option("--phi", phis, "family parameters")->delimiter(',');

    CLI::App* intersect = app.add_subcommand("intersect", "intersection points of two structures");
    common(intersect);
    intersect->add_option("file_a", file_a)->required();
    intersect->add_option("file_b", file_b)->required();
    intersect->add_option("--grid", grid, "random samples")->capture_default_str();
    intersect->add_option("--tol", scan_tol, "match threshold")->capture_default_str();

    CLI::App* eval = app.add_subcommand("eval", "evaluate a structure at a point");
    common(eval);
    eval->add_option("structure", structures_file)->required();
    eval->add_option("--point", coords, "seven coordinates")->delimiter(',')->expected(7)->required();

    CLI::App* pde = app.add_subcommand("pde", "nearly Kaehler PDE residuals at a point");
    common(pde);
    pde->add_option("--point", coords, "seven coordinates")->delimiter(',')->expected(7);
    pde->add_flag("--random", random, "use a random point from --seed");
    pde->add_option("--h", config.h, "finite-difference step")->capture_default_str();

    std::vector<const char*> argv{"nks6"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        check_format(format);

        if (gen->parsed()) {
            if (count < 1) {
                throw UsageError("--count must be >= 1");
            }
            Rng rng(config.seed);
            Json list = Json::array();
            for (int i = 0; i < count; ++i) {
                list.push_back(to_json(CayleyStructure(random_rotation(rng))));
            }
            emit(Json{{"convention", kOctonionConvention}, {"seed", config.seed}, {"structures", list}}, config.out,
                 out);
            return kExitPass;
        }

        if (verify->parsed()) {
            if (config.samples < 1) {
                throw UsageError("--samples must be >= 1");
            }
            if (!(config.h > 0.0) || config.h > 1e-3) {
                throw UsageError("--h must lie in (0, 1e-3]");
            }
            for (const auto& [name, value] : tol_values) {
                if (verify->count(flag_name(name)) > 0) {
                    config.tolerances[name] = value;
                }
            }
            if (!structures_file.empty()) {
                config.structures = read_structures(structures_file);
            }
            const std::vector<std::string> run_list =
                suite == "all" ? suite_names() : std::vector<std::string>{suite};
            bool pass = true;
            Json reports = Json::array();
            for (const auto& name : run_list) {
                const SuiteReport r = run_suite(name, config);
                pass = pass && r.passed();
                reports.push_back(r.to_json());
                for (const auto& c : r.checks) {
                    if (!c.pass) {
                        err << name << ": check " << c.name << " failed (residual " << c.residual << ", threshold "
                            << c.threshold << ")\n";
                    }
                }
            }
            Json report{{"suite", suite}, {"pass", pass}, {"conventions", conventions()},
                        {"config", config_to_json(config)}};
            if (suite == "all") {
                report["suites"] = reports;
            } else {
                report["checks"] = reports[0]["checks"];
                report["info"] = reports[0]["info"];
            }
            emit(report, config.out, out);
            return pass ? kExitPass : kExitFailure;
        }

        if (family->parsed()) {
            const TwistorPoint tp = point_spec(point_file, random, config.seed);
            const StructureFamily fam(tp);
            Json members = Json::array();
            std::vector<double> seen;
            bool pass = true;
            for (const double raw : phis) {
                const FamilyParameter phi(raw);
                const CayleyStructure s = fam.member(phi);
                const double residual = (s(tp.point()) - tp.op()).cwiseAbs().maxCoeff();
                pass = pass && residual <= 1e-10;
                Json m{{"phi_input", raw}, {"phi", phi.value()}, {"structure", to_json(s)}, {"base_residual", residual},
                       {"duplicate_of", nullptr}};
                for (std::size_t k = 0; k < seen.size(); ++k) {
                    if (std::abs(family_parameter_gap(seen[k], phi.value())) < 1e-12) {
                        m["duplicate_of"] = k;
                        break;
                    }
                }
                seen.push_back(phi.value());
                members.push_back(m);
            }
            Json report = to_json(fam);
            report["members"] = members;
            report["conventions"] = conventions();
            emit(report, config.out, out);
            return pass ? kExitPass : kExitFailure;
        }

        if (intersect->parsed()) {
            if (grid < 1) {
                throw UsageError("--grid must be >= 1");
            }
            const CayleyStructure a = read_structures(file_a).front();
            const CayleyStructure b = read_structures(file_b).front();
            Rng rng(config.seed);
            const IntersectionReport scan = intersection_scan(a, b, grid, scan_tol, rng);
            Json clusters = Json::array();
            for (const auto& c : scan.clusters) {
                Json entry{{"point", vector_to_json(c.point.vector())}, {"residual", c.residual}, {"hits", c.hits}};
                // Both structures pass through (q, J_q); the second must then lie
                // in the family through that twistor point.
                try {
                    const TwistorPoint tp = twistor_point_of(a, c.point);
                    const MembershipReport m = membership_test(b, tp, 100, 1e-8, rng);
                    entry["membership"] = {{"member", m.member},
                                           {"phi", m.phi ? Json(m.phi->value()) : Json(nullptr)},
                                           {"max_difference", m.max_difference}};
                } catch (const GeometryError& e) {
                    entry["membership"] = {{"error", e.what()}};
                }
                clusters.push_back(entry);
            }
            Json report{{"conventions", conventions()},
                        {"samples", scan.samples},
                        {"tol", scan_tol},
                        {"clusters", clusters},
                        {"min_generic_difference", scan.min_generic_difference},
                        {"max_sample_difference", scan.max_sample_difference}};
            if (scan.degenerate) {
                report["degenerate"] = "sections coincide";
            }
            emit(report, config.out, out);
            return kExitPass;
        }

        if (eval->parsed()) {
            const CayleyStructure s = read_structures(structures_file).front();
            const SpherePoint p(Eigen::Map<const Vec7>(coords.data()));
            const Mat7 j = s(p);
            const FiberResiduals f = fiber_residuals(p, j);
            emit(Json{{"conventions", conventions()},
                      {"point", vector_to_json(p.vector())},
                      {"operator", matrix_to_json(j)},
                      {"residuals", {{"normal", f.normal}, {"square", f.square}, {"skew", f.skew}}},
                      {"orientation", f.orientation}},
                 config.out, out);
            return kExitPass;
        }

        if (pde->parsed()) {
            if (random == !coords.empty()) {
                throw UsageError("give exactly one of --point or --random");
            }
            if (!(config.h > 0.0) || config.h > 1e-3) {
                throw UsageError("--h must lie in (0, 1e-3]");
            }
            Rng rng(config.seed);
            const SpherePoint p = random ? random_sphere_point(rng) : SpherePoint(Eigen::Map<const Vec7>(coords.data()));
            const PdeReport r = nk_pde_check(p, config.h);
            const bool pass = r.residual_domega <= tolerance(config, "domega") && r.residual_dphi <= tolerance(config, "dphi");
            emit(Json{{"conventions", conventions()},
                      {"point", vector_to_json(p.vector())},
                      {"h", config.h},
                      {"residual_domega", r.residual_domega},
                      {"mu", r.mu},
                      {"residual_dphi", r.residual_dphi},
                      {"pass", pass}},
                 config.out, out);
            return pass ? kExitPass : kExitFailure;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SchemaError& e) {
        err << "usage error: malformed input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const GeometryError& e) {
        err << "invariant violated: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace nks6::cli
