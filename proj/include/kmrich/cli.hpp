#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kmr::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kViolation = 1, kUsage = 2 };

/// Environment variable naming the default directory for written reports
/// and certificates.
inline constexpr const char* kOutputDirEnv = "KMRICH_OUTPUT_DIR";

/// Entry point for the `kmrich` tool; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kmr::cli
