#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace moment_atlas::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitPrecondition = 3;
inline constexpr int kExitUsage = 64;

/// Parses and executes one command line. JSON goes to `out`, diagnostics and
/// usage text to `err`. Returns the process exit code.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace moment_atlas::cli
