#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nks6::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;  ///< a check or an input invariant failed
inline constexpr int kExitUsage = 2;    ///< bad flags, unreadable or malformed files

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace nks6::cli
