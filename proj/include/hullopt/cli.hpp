#pragma once

#include <iosfwd>

namespace hullopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point of the `hullopt` tool. Data goes to `out`, diagnostics and
/// help for usage errors to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hullopt::cli
