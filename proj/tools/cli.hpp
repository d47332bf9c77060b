#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flasque {

/// Exit codes of the command-line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitInput = 2;

/// Runs the `flabby` command line (args exclude the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flasque
