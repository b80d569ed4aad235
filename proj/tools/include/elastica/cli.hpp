#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace elastica::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerificationFailed = 1,
    kExitUsage = 2,
    kExitIncompatible = 3,
};

inline constexpr int kReportSchemaVersion = 1;

/// Runs the command line `args` (without the program name). Normal output goes to `out`,
/// diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const char* version();

}  // namespace elastica::cli
