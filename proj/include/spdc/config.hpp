#pragma once

// Line-oriented `key = value` simulation configuration.
//
//   # comment
//   inv_group_velocity_diff = 2.5 ps/cm
//   crystal_length = 0.56 mm
//   beta = 50 fs
//
// Dimensioned values take a unit suffix (fs, ps, ns, s for time; nm, mm,
// cm, m for length; time/length for inverse group velocity; 1/s, 1/fs,
// 1/ps for the tau' scale). The suffix may follow the number directly.

#include <optional>
#include <string>
#include <string_view>

#include "spdc/correlation.hpp"
#include "spdc/params.hpp"
#include "spdc/quadrature.hpp"

namespace spdc {

/// Which optical frequency converts alpha into gamma.
enum class GammaFrequency { pump, degenerate };

struct SweepSettings {
  std::optional<double> delay_min;        ///< fs
  std::optional<double> delay_max;        ///< fs
  int points = 401;
  std::optional<double> tau_prime_scale;  ///< 1/fs
  double delay = 0.0;                     ///< fixed T for gamma scans and optimization, fs
  double gamma_min = 0.0;
  double gamma_max = 10.0;
  double optimize_tol = 1e-6;
  RateMethod method = RateMethod::closed_form;
  int spot_checks = 5;

  bool operator==(const SweepSettings&) const = default;
};

struct SimulationConfig {
  OpticalConfig optical;
  double beta = 50.0;  ///< fs; used by the filter, gamma scans and optimization
  std::optional<double> gamma;
  std::optional<double> alpha;
  GammaFrequency gamma_frequency = GammaFrequency::pump;
  QuadratureSpec quadrature;
  SweepSettings sweep;

  /// The phase filter, when gamma or alpha is set.
  std::optional<PhaseFilter> filter() const;
  TimingParams timing() const { return derive_timing(optical); }

  bool operator==(const SimulationConfig&) const = default;
};

/// Default profile: 2.5 ps/cm mismatch, 0.56 mm crystal, 700 nm degenerate
/// photons, beta = 50 fs, detector distance giving tau2 = 1.3e-10 s.
extern const std::string_view kDefaultProfile;

/// Parses and validates a config. Errors are ConfigError whose field() is
/// the key and whose message names the line.
SimulationConfig parse_config(std::string_view text);

/// Canonical text form (internal units, shortest round-trip numbers); parsing it
/// yields an identical record.
std::string serialize_config(const SimulationConfig& config);

/// A dimensioned value such as "50 fs", "50fs" or "1.3e-10 s", in fs.
double parse_time(std::string_view text);

}  // namespace spdc
