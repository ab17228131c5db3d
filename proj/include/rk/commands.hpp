#pragma once

// Command-line surface: subcommand dispatch, human and JSON reports, and
// the exit-code contract (0 verified success, 1 verified negative, 2
// unknown, 64 usage error, 65 file error).

#include <iosfwd>
#include <string>
#include <vector>

namespace rk {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitFile = 65;

// Runs the full interface on the given arguments (program name excluded).
// Returns the process exit code; reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rk
