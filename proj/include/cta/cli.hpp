// cli.hpp — command-line entry point, exposed for testing
#pragma once

#include <string>
#include <vector>

namespace cta {

/// Runs the tool on the given argument list (without the program name).
/// Returns the process exit code: 0 success, 1 usage/parse/validation
/// error, 2 when `check --fail-on-reachable` finds the target reachable.
int cli_main(const std::vector<std::string>& args);

}  // namespace cta
