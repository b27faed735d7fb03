#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptgram::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailure = 1,
    kUsageError = 2,
    kNumericalFailure = 3,
};

/// Runs `ptgram <args...>` (args excludes the program name). Reports go to
/// `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptgram::cli
