#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace borromean::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kPassed = 0, kFailed = 1, kUsageError = 2 };

/// Runs the tool with `args` (program name excluded). Reports go to `out`
/// unless --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace borromean::cli
