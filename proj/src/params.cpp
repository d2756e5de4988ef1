#include "spdc/params.hpp"

#include <cmath>

namespace spdc {

namespace {

void require_positive(double value, const char* field) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ConfigError(field, std::string(field) + " must be a positive finite value");
  }
}

}  // namespace

double angular_frequency_from_wavelength(double wavelength_nm) {
  require_positive(wavelength_nm, "wavelength");
  return 2.0 * kPi * kSpeedOfLightNmPerFs / wavelength_nm;
}

OpticalConfig OpticalConfig::from_wavelength(double inv_group_velocity_diff,
                                             double crystal_length,
                                             double detector_distance,
                                             double degenerate_wavelength) {
  OpticalConfig cfg;
  cfg.inv_group_velocity_diff = inv_group_velocity_diff;
  cfg.crystal_length = crystal_length;
  cfg.detector_distance = detector_distance;
  cfg.degenerate_wavelength = degenerate_wavelength;
  require_positive(degenerate_wavelength, "degenerate_wavelength");
  // Degenerate photons each carry half the pump energy.
  cfg.pump_angular_frequency = angular_frequency_from_wavelength(0.5 * degenerate_wavelength);
  cfg.validate();
  return cfg;
}

void OpticalConfig::validate() const {
  require_positive(inv_group_velocity_diff, "inv_group_velocity_diff");
  require_positive(crystal_length, "crystal_length");
  require_positive(detector_distance, "detector_distance");
  require_positive(degenerate_wavelength, "degenerate_wavelength");
  require_positive(pump_angular_frequency, "pump_angular_frequency");
}

TimingParams derive_timing(const OpticalConfig& cfg) {
  cfg.validate();
  return TimingParams{cfg.inv_group_velocity_diff * cfg.crystal_length / 2.0,
                      cfg.inv_group_velocity_diff * cfg.detector_distance};
}

double modulation_gamma(double alpha, double beta, double omega0) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("modulation_gamma: beta must be positive");
  }
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw std::invalid_argument("modulation_gamma: omega0 must be positive");
  }
  return 2.0 * alpha * std::sin(beta * omega0 / 2.0);
}

PhaseFilter PhaseFilter::from_gamma(double gamma, double beta) {
  if (!std::isfinite(gamma)) {
    throw ConfigError("gamma", "gamma must be finite");
  }
  require_positive(beta, "beta");
  return PhaseFilter{gamma, beta, std::nullopt};
}

PhaseFilter PhaseFilter::from_alpha(double alpha, double beta, double omega0) {
  if (!std::isfinite(alpha)) {
    throw ConfigError("alpha", "alpha must be finite");
  }
  require_positive(beta, "beta");
  require_positive(omega0, "omega0");
  return PhaseFilter{modulation_gamma(alpha, beta, omega0), beta, alpha};
}

double effective_delay(double tau_plus_tau2, double scale) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("effective_delay: scale must be positive");
  }
  return scale * tau_plus_tau2;
}

}  // namespace spdc
