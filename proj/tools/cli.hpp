#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace bepeval::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs the command line `args` (without the program name). Reports go to
/// `out` (or the --output file), diagnostics to `err`. Nothing is written to
/// the report destination unless the whole command succeeds.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace bepeval::cli
