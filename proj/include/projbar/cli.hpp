#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace projbar::cli {

enum ExitCode : int { kOk = 0, kDomainError = 1, kUsageError = 2 };

/// Runs the `projbar` command line with `args` (without the program name).
/// All output goes to `out`/`err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace projbar::cli
