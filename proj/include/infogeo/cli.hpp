#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace infogeo::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,
    kNumerical = 3,
    kDegenerate = 4,
};

// Runs one command line (without the program name). The JSON report goes to
// `out`, diagnostics to `err`; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// %.17g; non-finite values become "inf", "-inf" or "nan".
std::string format_number(double v);

}  // namespace infogeo::cli
