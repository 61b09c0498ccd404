#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace realcech {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,     // verification failures and unexpected errors
  kExitInvalid = 2,     // usage errors, cover validation, unknown spaces
  kExitDegree = 3,      // DegreeOutOfRange, InsufficientDegree
  kExitNotCompact = 4,  // NotCompact
};

// args excludes the program name. Results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace realcech
