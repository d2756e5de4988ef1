#pragma once

// Command-line front end: `spdc <dip|shape|gamma-scan|optimize|validate> ...`.

#include <iosfwd>
#include <string>
#include <vector>

namespace spdc {

/// Exit statuses of run_command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNumericalError = 2;

/// Runs one command. `args` excludes the program name. Data goes to `out`
/// (or the --out file), diagnostics only to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spdc
