#pragma once

#include <iosfwd>

namespace tssb::cli {

/// Exit codes of the tssb tool.
enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kNumericError = 3,
};

/// Parses argv (argv[0] is the program name), runs the subcommand and returns
/// its exit code. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err);

} // namespace tssb::cli
