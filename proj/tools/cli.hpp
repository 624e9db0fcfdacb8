#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fjs::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kUsage = 2,
  kTimeoutWithBounds = 3,
};

/// Runs one command line (args[0] is the program name). Regular output goes
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fjs::cli
