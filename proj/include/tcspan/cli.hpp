#pragma once

#include <string>
#include <vector>

namespace tcspan::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // verification or certificate check failed
inline constexpr int kExitUsage = 2;   // bad flags, bad input, guard hit

/// Runs one tcspan command; args excludes the program name.
int run(const std::vector<std::string>& args);

int run(int argc, char** argv);

}  // namespace tcspan::cli
