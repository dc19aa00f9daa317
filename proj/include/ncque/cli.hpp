#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncque {

enum ExitCode : int { exit_ok = 0, exit_failed = 1, exit_parse_error = 2, exit_invalid_params = 3 };

/// Runs one command line (without the program name). Results go to `out`
/// (or the --out file), diagnostics to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncque
