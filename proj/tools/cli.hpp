#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toricmld::cli {

/// Exit codes: 0 success, 1 invalid input, 2 failed self-verification.
enum ExitCode { kOk = 0, kInvalidInput = 1, kVerificationFailed = 2 };

/// Runs one subcommand. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toricmld::cli
