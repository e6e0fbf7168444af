#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aoi {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitInput = 2, kExitInternal = 3 };

/// Runs one `aoi` command. `args` excludes the program name; `in` feeds `runsql`
/// when no file is given.
int run_cli(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

}  // namespace aoi
