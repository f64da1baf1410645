#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace satflux::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kSeedFailure = 3;
inline constexpr int kNoClassicalSolution = 4;
inline constexpr int kInstability = 5;

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace satflux::cli
