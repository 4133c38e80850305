#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ginin::cli {

// Runs the command line given argv-style arguments (without the program
// name). Exit codes: 0 success, 1 validation/usage error, 2 numerical
// non-convergence.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ginin::cli
