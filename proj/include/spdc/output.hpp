#pragma once

// CSV and SVG serialization of sweep results.
//
// CSV layout:
//   # x=<x_label>, y=<y_label>
//   # <key> = <value>          one line per metadata entry
//   <x>,<y>                    12 significant digits
//
// Output is a pure function of the curve, so identical curves give
// byte-identical files.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spdc/experiments.hpp"

namespace spdc {

/// File could not be written or read; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kCsvDigits = 12;

/// Throws std::invalid_argument for an invalid curve (non-finite y,
/// non-increasing x) before writing anything.
void write_curve_csv(const Curve& curve, std::ostream& out);
void write_curve_csv(const Curve& curve, const std::filesystem::path& path);

/// Inverse of write_curve_csv up to the printed precision.
Curve read_curve_csv(std::string_view text);

/// Metadata entries whose key starts with "cfg." joined back into config
/// text (prefix stripped), ready for parse_config.
std::string config_text_from_metadata(const Curve& curve);

/// Standalone SVG line plot with labelled axes.
void write_curve_svg(const Curve& curve, std::ostream& out);
void write_curve_svg(const Curve& curve, const std::filesystem::path& path);

/// `# result=optimize_gamma`, metadata lines, then a header row and one
/// data row: gamma_star,rate_star,iterations,bracket_lo,bracket_hi.
void write_optimization_csv(const OptimizationResult& result, const Metadata& metadata,
                            std::ostream& out);

/// Reads a whole file; throws IoError naming the path on failure.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace spdc
