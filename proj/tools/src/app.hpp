#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treelab::cli {

enum ExitCode : int { exit_ok = 0, exit_contract = 1, exit_config = 2 };

/// Runs the driver with argv-style arguments (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace treelab::cli
