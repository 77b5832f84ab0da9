#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qprim::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { ok = 0, computation_error = 1, usage_error = 2 };

/// Runs one command line (without the program name); returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qprim::cli
