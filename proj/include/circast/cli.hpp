#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circast::cli {

/// Exit statuses shared by every subcommand.
enum ExitCode : int { kSuccess = 0, kNegative = 1, kUsage = 2 };

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circast::cli
