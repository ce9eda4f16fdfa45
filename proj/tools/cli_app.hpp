#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wquant::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kBadParameters = 2;
inline constexpr int kNoConvergence = 3;

/// Runs one command line (without the program name) and returns the exit code.
/// Normal output goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wquant::cli
