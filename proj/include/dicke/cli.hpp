// cli.hpp: command-line front end, callable in-process

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dicke {

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2 };

/// args excludes the program name. Datasets go to `out` (or --out), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dicke
