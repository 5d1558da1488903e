#pragma once

#include <string>
#include <vector>

namespace hetmos::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kRuntimeFailure = 1;
inline constexpr int kUsageError = 2;

// Runs the command line `args` (args[0] is the program name) and returns the
// process exit code. Diagnostics go to stderr, summaries to stdout.
int run(const std::vector<std::string>& args);

}  // namespace hetmos::cli
