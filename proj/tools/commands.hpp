#pragma once

#include <iosfwd>

namespace qam::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitFormat = 2,
    kExitUnsupportedSize = 3,
    kExitNoSupport = 4,
    kExitInternal = 5,
};

/// Entry point of the `qam` tool. Reports go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qam::cli
