#pragma once

#include <ostream>

namespace hmf::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kCheckFailed = 2, kInternal = 3 };

/// Entry point of the `hmf` tool; output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hmf::cli
