#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lforge::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kSuccess = 0, kMathFailure = 1, kInputError = 2 };

/// Runs `lforge <args...>`; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lforge::cli
