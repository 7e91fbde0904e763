#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hetbaker::cli {

// Runs one CLI invocation. `args` excludes the program name. Exit codes:
// 0 = success / all checks passed, 1 = a report check failed, 2 = usage or
// configuration error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hetbaker::cli
