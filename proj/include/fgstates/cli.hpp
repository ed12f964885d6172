#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fgstates {

/// Runs the command-line interface against explicit streams so tests can
/// drive it in-process.  `args` excludes the program name.  Returns the
/// process exit code: 0 success, 1 a verification command found violations,
/// 2 usage or input errors.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fgstates
