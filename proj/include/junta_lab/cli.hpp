#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace junta_lab {

/// Dispatches one CLI invocation. Exit status 0 on success with all
/// assertions passing, 1 when a run completes but an assertion or bound
/// fails, 2 on usage, validation, or parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace junta_lab
