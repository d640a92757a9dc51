#pragma once

#include <iosfwd>

namespace sumsetlab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line tool with output directed to `out` and `err`.
/// Returns the process exit code.
int cli_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sumsetlab::cli
