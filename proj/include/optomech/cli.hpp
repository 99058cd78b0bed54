#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace optomech {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,     // unreadable/invalid config, bad flags, I/O failure
  kExitNumerical = 2,  // numerical failure or oracle disagreement
};

/// Subcommands: derive, point, sweep, stability, verify.
int cli_main(int argc, char** argv);

/// Same, with explicit streams; `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace optomech
