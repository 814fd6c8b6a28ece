#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qreg::cli {

enum ExitCode : int {
    kOk = 0,
    kRefused = 1,
    kInputError = 2,
    kVerifyMismatch = 3,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qreg::cli
