#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace carnot::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kChecksFailed = 1,
  kConfigError = 2,
  kLimitExceeded = 3,
  kNumericalFailure = 4,
};

// Runs the command line `args` (args[0] is the program name). Human-readable
// output goes to `out`, diagnostics to `err`; result files land in the
// subcommand's --output-dir.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace carnot::cli
