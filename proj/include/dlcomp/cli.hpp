#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dlcomp::cli {

// Exit codes of the command-line interface.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitArithmetic = 3;
inline constexpr int kExitGuard = 4;

// args[0] is the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dlcomp::cli
