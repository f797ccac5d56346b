#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace simrank::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,    // bad flags, failed validation, size guards, dimension mismatches
  kIo = 2,       // unreadable / unwritable files, malformed input files
  kNumeric = 3,  // solver breakdown, non-finite data, undefined metrics
};

/// Runs the command line `args` (args[0] is the program name) and returns the
/// exit code. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace simrank::cli
