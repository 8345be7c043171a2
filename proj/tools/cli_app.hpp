#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kantorovich::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitInput = 2;

// Runs the command line `args` (without the program name). Reports go to the
// --output file when given, else to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kantorovich::cli
