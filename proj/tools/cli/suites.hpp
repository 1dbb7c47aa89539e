#pragma once

#include "cli/report.hpp"

#include <string>
#include <vector>

namespace nks6::cli {

/// Suite names accepted by `verify`, in the order `all` runs them.
const std::vector<std::string>& suite_names();

/// Throws std::invalid_argument for an unknown name.
SuiteReport run_suite(const std::string& name, const RunConfig& config);

} // namespace nks6::cli
