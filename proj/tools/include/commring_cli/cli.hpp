#pragma once

#include <string>
#include <vector>

namespace commring::cli {

/// Exit codes of the driver.
inline constexpr int kExitPass = 0;
inline constexpr int kExitToleranceFailure = 1;
inline constexpr int kExitError = 2;

/// Parses the command line and runs one subcommand; args excludes the program name.
int run(const std::vector<std::string>& args);

}  // namespace commring::cli
