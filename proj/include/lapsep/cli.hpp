#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lapsep::cli {

/// Runs one CLI invocation (argv without the program name) against the
/// given streams and returns the process exit code:
///   0 separable, 1 entangled, 2 unknown, 3 invalid input or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lapsep::cli
