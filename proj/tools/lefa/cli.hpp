#pragma once

#include <iosfwd>

namespace lefa::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolations = 1;
inline constexpr int kExitError = 2;

/// Parses argv and dispatches to a subcommand. Summaries go to `out`, one-line
/// diagnostics and usage text to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lefa::cli
