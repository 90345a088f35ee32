#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cocite::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Artifacts go to
/// the directory given by --out; messages go to `out` / `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cocite::cli
