#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seedtrace::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,      // unexpected internal error
  kUsage = 2,        // unknown subcommand, malformed or inconsistent flags
  kInputData = 3,    // unreadable or invalid input files
  kCheckFailed = 4,  // a check-style run missed its threshold
};

/// Runs one command line. args excludes the program name. JSON results go to
/// `out`, diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seedtrace::cli
