#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wkit::cli {

/// Exit codes: 0 pass, 1 mathematical rejection, 2 usage or load error.
enum ExitCode : int { pass = 0, rejected = 1, usage = 2 };

/// Runs one command line (without the program name) and returns its exit code.
/// Everything, including diagnostics, is written to `out`.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace wkit::cli
