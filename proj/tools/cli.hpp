#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anderson::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3 };

/// Runs the command line `args` (args[0] is the program name). Data goes to
/// `out` unless --out is given; diagnostics and summary tables go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anderson::cli
