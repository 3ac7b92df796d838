#pragma once

#include <iosfwd>

namespace genram {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitSpecError = 2;
inline constexpr int kExitUsage = 64;

/// Entry point of the genram command-line tool; writes to the given streams
/// and returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace genram
