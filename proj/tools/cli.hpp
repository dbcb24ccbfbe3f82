#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace citeval::cli {

/// Entry point shared by the executable and the in-process CLI tests.
/// `args` excludes the program name. Returns the process exit code
/// (0 success, 2 validation, 3 degenerate data, 4 I/O).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace citeval::cli
