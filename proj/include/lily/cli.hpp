#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lily::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `lily-router` tool. args excludes the program name.
/// Curve and scaling runs write a CSV to --out plus a `<out>.json` sidecar with
/// the fully resolved configuration; `replay` re-runs such a sidecar.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lily::cli
