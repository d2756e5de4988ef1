#include "spdc/format.hpp"

#include <charconv>
#include <cstdio>

namespace spdc {

std::string format_g(double value, int digits) {
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

std::string format_exact(double value) {
  if (value == 0.0) value = 0.0;
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

}  // namespace spdc
