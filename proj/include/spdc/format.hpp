#pragma once

#include <string>

namespace spdc {

/// printf-style %.<digits>g, with negative zero printed as 0.
std::string format_g(double value, int digits);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_exact(double value);

}  // namespace spdc
