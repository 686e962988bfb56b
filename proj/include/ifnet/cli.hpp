#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ifnet {

// Exit codes of the ifnet command.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // any other operation error
  kExitConfig = 2,
  kExitHypothesis = 3,
  kExitStall = 4,
};

// Runs the command line `args` (args[0] is the program name). Reports go to
// files under --out; a short summary goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ifnet
