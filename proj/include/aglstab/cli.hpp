#pragma once

#include <ostream>

namespace aglstab {

enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitVerificationFailure = 2,
  kExitBudgetExceeded = 3,
};

/// Entry point of the aglstab command-line tool.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aglstab
