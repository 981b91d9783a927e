#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace factorforge {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitInfeasible = 1,     // infeasible, or a refutation certificate returned
  kExitInvalidInput = 2,
  kExitPrecondition = 3,   // theorem hypothesis violated or result failed verification
  kExitCapacity = 4,
};

/// Runs one `factorforge` invocation. args excludes the program name. The
/// result document goes to `out` as JSON; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace factorforge
