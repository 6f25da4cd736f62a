#pragma once

#include <string>
#include <vector>

namespace rsl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

// Full command-line entry point (argv[0] is the program name).
int run(int argc, const char* const* argv);

// Same dispatcher for in-process callers; args exclude the program name.
int run(const std::vector<std::string>& args);

}  // namespace rsl::cli
