#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circlepat::cli {

/// Stable process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kMathFailure = 1,   ///< validation failed, not attainable, no convergence, disagreement
    kIoFailure = 2,     ///< unreadable or malformed input, unwritable output
    kScaleGuard = 3,    ///< too many vertices for subset enumeration
    kPrecondition = 4,  ///< face angle sums or attainability not satisfied before solving
};

/// Environment variable overriding the default residual tolerance.
inline constexpr const char* kResidualTolEnv = "CIRCLEPAT_RESIDUAL_TOL";

/// Runs one command line (args[0] is the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circlepat::cli
