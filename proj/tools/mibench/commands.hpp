#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mibench::cli {

/// Exit codes: 0 success, 1 runtime failure, 2 usage error.
enum ExitCode : int { kSuccess = 0, kRuntimeError = 1, kUsageError = 2 };

/// Runs one command line (without the program name), writing reports to
/// `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mibench::cli
