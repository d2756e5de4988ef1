#pragma once

// Physical constants and derived timing/modulation parameters.
//
// Internal units: time in femtoseconds, length in millimetres (crystal and
// propagation distances) or nanometres (wavelengths), angular frequency in
// rad/fs. Conversion to and from SI happens only at the IO boundary.

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace spdc {

/// Speed of light in vacuum, m/s (exact SI value).
inline constexpr double kSpeedOfLight = 299792458.0;
/// Same constant in nm/fs.
inline constexpr double kSpeedOfLightNmPerFs = kSpeedOfLight * 1e-6;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Raised when a configuration value is invalid. `field()` names the
/// offending parameter (or config key).
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Angular frequency (rad/fs) of light with the given vacuum wavelength (nm).
double angular_frequency_from_wavelength(double wavelength_nm);

/// Crystal and beam constants of the collinear type-II source.
struct OpticalConfig {
  double inv_group_velocity_diff = 0.0;  ///< 1/u_o - 1/u_e, fs/mm
  double crystal_length = 0.0;           ///< mm
  double detector_distance = 0.0;        ///< crystal centre to each detector, mm
  double degenerate_wavelength = 0.0;    ///< nm
  double pump_angular_frequency = 0.0;   ///< rad/fs

  /// Builds a config whose pump frequency is twice the degenerate photon
  /// frequency. Validates all fields.
  static OpticalConfig from_wavelength(double inv_group_velocity_diff,
                                       double crystal_length,
                                       double detector_distance,
                                       double degenerate_wavelength);

  /// Degenerate photon angular frequency, half the pump frequency.
  double degenerate_angular_frequency() const {
    return 0.5 * pump_angular_frequency;
  }

  /// Throws ConfigError naming the first non-positive or non-finite field.
  void validate() const;

  bool operator==(const OpticalConfig&) const = default;
};

/// Delays derived from the group-velocity mismatch.
struct TimingParams {
  double tau1 = 0.0;  ///< half the o/e walk-off across the crystal, fs
  double tau2 = 0.0;  ///< o/e walk-off over the detector distance, fs

  bool operator==(const TimingParams&) const = default;
};

TimingParams derive_timing(const OpticalConfig& cfg);

/// Spectral phase filter theta(w) = alpha cos(beta w), reduced to the
/// effective depth gamma used by every rate computation.
struct PhaseFilter {
  double gamma = 0.0;
  double beta = 0.0;  ///< fs
  std::optional<double> alpha;

  static PhaseFilter from_gamma(double gamma, double beta);

  /// gamma = 2 alpha sin(beta omega0 / 2). Which optical frequency omega0
  /// denotes is the caller's choice: the pump frequency (the subscript in
  /// the modulated-rate expansion) or the degenerate photon frequency.
  static PhaseFilter from_alpha(double alpha, double beta, double omega0);

  bool is_off() const { return gamma == 0.0; }

  bool operator==(const PhaseFilter&) const = default;
};

/// 2 alpha sin(beta omega0 / 2), sign preserved.
double modulation_gamma(double alpha, double beta, double omega0);

/// tau' = scale * (tau + tau2). `scale` in 1/fs.
double effective_delay(double tau_plus_tau2, double scale);

}  // namespace spdc
