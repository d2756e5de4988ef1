#pragma once

// Delay and modulation-depth sweeps, gamma optimization and peak finding.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spdc/correlation.hpp"
#include "spdc/params.hpp"
#include "spdc/quadrature.hpp"

namespace spdc {

struct Sample {
  double x = 0.0;
  double y = 0.0;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// An ordered sampled curve plus the parameter record that produced it.
struct Curve {
  std::string x_label;
  std::string y_label;
  std::vector<Sample> samples;
  /// Ordered key/value parameter echo (timing, filter, method, quadrature).
  Metadata metadata;

  /// Throws std::invalid_argument unless x is strictly increasing and all y
  /// are finite.
  void validate() const;
};

struct OptimizationResult {
  double gamma_star = 0.0;
  double rate_star = 0.0;
  int iterations = 0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct PeakResult {
  double delay = 0.0;  ///< fs
  double rate = 0.0;
};

/// A quadrature spot check of a closed-form sweep disagreed beyond 1e-5.
class SpotCheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Agreement required between closed-form sweep points and their quadrature
/// spot checks.
inline constexpr double kSpotCheckTolerance = 1e-5;

struct ScanOptions {
  RateMethod method = RateMethod::closed_form;
  /// Closed-form sweeps re-evaluate this many randomly chosen points by
  /// direct quadrature.
  int spot_checks = 5;
  std::uint64_t seed = 0x5eed;
};

/// Normalized rate against tau' = scale * T for T uniformly spaced over
/// [delay_lo, delay_hi]. `scale` in 1/fs.
Curve delay_scan(const TimingParams& timing, const std::optional<PhaseFilter>& filter,
                 double delay_lo, double delay_hi, int n_points, const QuadratureSpec& spec,
                 double scale, const ScanOptions& options = {});

/// Normalized rate at fixed delay T against gamma over [gamma_lo, gamma_hi].
Curve gamma_scan(const TimingParams& timing, double beta, double delay, double gamma_lo,
                 double gamma_hi, int n_points, const QuadratureSpec& spec,
                 const ScanOptions& options = {});

/// Maximizes the closed-form rate at fixed delay over gamma in the bracket:
/// a coarse grid isolates the best basin, golden-section search refines it
/// to `tol`, and the bracket endpoints are compared last. Ties go to the
/// smallest gamma. Throws std::invalid_argument for an empty bracket or
/// non-positive tol.
OptimizationResult optimize_gamma(const TimingParams& timing, double beta, double delay,
                                  double bracket_lo, double bracket_hi, double tol);

/// Sorted kinks of the closed-form rate inside [lo, hi] (triangle centres
/// and support edges), endpoints included. Points closer than `merge` are
/// merged.
std::vector<double> rate_breakpoints(const ClosedFormRate& rate, double lo, double hi,
                                     double merge = 0.0);

/// Global maximum of the piecewise-linear closed-form rate over the range by
/// breakpoint enumeration. Ties (within 1e-12) go to the smallest delay.
PeakResult find_peak_delay(const TimingParams& timing, const std::optional<PhaseFilter>& filter,
                           double lo, double hi, double tol);

}  // namespace spdc
