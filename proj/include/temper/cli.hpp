#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace temper {

enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitInput = 2, kExitDomain = 3 };

/// Runs the command line (without the program name); returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace temper
