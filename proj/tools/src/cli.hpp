#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace amalgam::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kVerificationFailed = 2 };

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amalgam::cli
