#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jetstress {

/// Exit codes of the command-line front end.
enum ExitCode : int { exit_pass = 0, exit_violation = 1, exit_usage = 2 };

/// Runs one command; `args` excludes the program name. Never returns anything
/// but 0, 1 or 2.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jetstress
