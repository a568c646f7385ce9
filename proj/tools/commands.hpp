#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace twistmap::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kFalsified = 2 };

/// Parses args (without the program name), runs the command and writes the
/// report to out. Diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistmap::cli
