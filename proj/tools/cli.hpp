#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace reefkit::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kConfig = 3,
  kBudget = 4,
  kCheckFailure = 5,
};

/// Runs one `reefkit` invocation; args exclude the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace reefkit::cli
