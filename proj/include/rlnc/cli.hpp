#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rlnc {

/// Runs the command-line interface on the given arguments (program name
/// excluded), writing normal output to `out` and diagnostics to `err`.
/// Returns the process exit code: 0 success, 2 configuration error,
/// 3 simulation tolerance failure, 4 oracle mismatch.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rlnc
