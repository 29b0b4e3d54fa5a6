#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tailband::cli {

/// Runs the command line `args` (without the program name). Returns the
/// process exit code: 0 success, 1 internal error, 2 usage or domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tailband::cli
