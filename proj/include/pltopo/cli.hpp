#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pltopo {

/// Runs one subcommand; args exclude the program name. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pltopo
