#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hjcs::cli {

enum ExitCode : int { kOk = 0, kNegative = 2, kUndecided = 3, kUsage = 4 };

/// Runs one subcommand. `args` excludes the program name. Transcript and
/// results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hjcs::cli
