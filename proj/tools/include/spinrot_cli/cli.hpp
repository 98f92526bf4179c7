#pragma once

#include <iosfwd>

namespace spinrot::cli {

enum ExitCode : int { kOk = 0, kRuntimeError = 1, kConfigError = 2, kNumericalError = 3 };

/// Entry point of the `spinrot` tool. Diagnostics go to `err`, the one-line
/// run summary to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinrot::cli
