#pragma once

#include <iosfwd>

namespace tsbitlab::cli {

/// Exit codes: 0 success, 1 verification failure or infeasible request, 2 bad arguments.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand. argv[0] is the program name.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tsbitlab::cli
