#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ethex::cli {

enum ExitCode {
  kOk = 0,
  kUsage = 1,     // bad flags, unreadable or malformed input
  kNoPlan = 2,    // NoPlanFound, ValidationFailed, BudgetExceeded
  kInternal = 3,
};

/// Runs one invocation; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ethex::cli
