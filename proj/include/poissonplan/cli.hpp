#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace poissonplan::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNumeric = 3,
  kIo = 4,
};

/// Runs the command line (without the program name) and returns the exit
/// code. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g formatting used for every real in text and CSV output.
std::string format_real(double value);

}  // namespace poissonplan::cli
