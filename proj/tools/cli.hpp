#pragma once

#include <ostream>

namespace levychaos::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kCapacityError = 3,
  kNumericError = 4,
  kCrosscheckFailed = 5,
  kInternalError = 70,
};

/// Runs one command line. Results go to `out` as JSON (or CSV), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace levychaos::cli
