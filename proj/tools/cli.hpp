#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fifonet::cli {

/// Process exit codes of the fifonet tool.
enum ExitCode : int {
  kOk = 0,            // success, audit passed, or certified
  kFailed = 1,        // validation errors or a failed audit
  kInconclusive = 2,  // certification could not conclude
  kUsageError = 3,    // bad arguments, unreadable or malformed input
};

/// Runs one command. `args` excludes the program name. Normal output goes to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fifonet::cli
