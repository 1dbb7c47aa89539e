#pragma once

#include <nks6/cayley.hpp>
#include <nks6/serialization.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nks6::cli {

/// Everything a run depends on. Identical configs give identical reports.
struct RunConfig
{
    std::uint64_t seed = 42;
    int samples = 200;
    double h = 1e-4;
    std::map<std::string, double> tolerances;  ///< overrides by check name
    std::string out;
    std::optional<double> phi1;
    std::optional<double> phi2;
    std::vector<CayleyStructure> structures;   ///< loaded with --structures
};

/// Default thresholds, keyed by check name.
const std::map<std::string, double>& default_tolerances();

double tolerance(const RunConfig& config, const std::string& name);

/// Upper-bound checks pass when residual <= threshold; lower-bound checks
/// (margins, witnesses, orders) pass when residual > threshold.
enum class Bound
{
    Upper,
    Lower,
};

struct Check
{
    std::string name;
    double residual = 0.0;
    double threshold = 0.0;
    Bound bound = Bound::Upper;
    bool pass = false;
};

struct SuiteReport
{
    std::string suite;
    std::vector<Check> checks;
    Json info = Json::object();  ///< informational values, never asserted

    void add(const RunConfig& config, const std::string& name, double residual, Bound bound = Bound::Upper);
    bool passed() const;
    Json to_json() const;
};

Json config_to_json(const RunConfig& config);

} // namespace nks6::cli
