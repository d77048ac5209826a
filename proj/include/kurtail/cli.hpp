#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kurtail::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kSuccess = 0,    ///< success, or validation PASS
  kUsageError = 1, ///< bad flags, unreadable or malformed input
  kFail = 2,       ///< validation FAIL
  kInfeasible = 3, ///< inputs outside a mathematical domain
};

/// Runs the command line with argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kurtail::cli
