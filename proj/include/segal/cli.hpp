#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace segal {

/// Exit statuses of the command-line driver.
enum ExitStatus : int { exit_holds = 0, exit_fails = 1, exit_unknown = 2, exit_usage = 3 };

/// Runs one command line (without the program name). Documents and reports
/// go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace segal
