#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace genproj::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvalid = 2;

/// Runs the command line front end. `args` excludes the program name.
/// Returns the process exit code: 0 success, 1 usage/parse/IO error,
/// 2 parameter validation failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Locale-independent %.Ng formatting; negative zero prints as 0.
std::string format_number(double value, int significant_digits);

} // namespace genproj::cli
