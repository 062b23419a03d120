#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace resram {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,  // bad flags or config
  exit_io = 2,
  exit_infeasible = 3,
  exit_model = 4,  // simulation or parameter-domain failure
};

/// Entry point of the `resram` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace resram
