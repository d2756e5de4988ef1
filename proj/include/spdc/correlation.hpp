#pragma once

// Normalized two-photon coincidence rate as a function of the combined delay
// T = tau + tau2, with and without a spectral phase filter on one photon.
//
// Rates are normalized by the large-delay baseline
// int sinc^2(tau1 nu) dnu = pi / tau1, so an unfiltered rate saturates at 1.
// Three independent evaluation routes are provided:
//   direct       quadrature of sinc^2(tau1 nu) (2 - 2 cos(2 nu T - gamma sin(beta nu)))
//   series       quadrature of the Bessel (Jacobi-Anger) expanded integrand
//   closed_form  sum of Bessel-weighted triangle functions (no quadrature)

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "spdc/params.hpp"
#include "spdc/quadrature.hpp"

namespace spdc {

enum class RateMethod { direct, series, closed_form };

std::string_view to_string(RateMethod method);
/// Parses "direct", "series" or "closed_form"; throws ConfigError otherwise.
RateMethod parse_rate_method(std::string_view text);

struct RatePoint {
  double delay = 0.0;  ///< T = tau + tau2, fs
  double rate = 0.0;   ///< normalized coincidence rate
  RateMethod method = RateMethod::closed_form;
};

/// Bessel order bound used for the series and closed-form routes when the
/// caller does not supply one: tail of |J_n(gamma)| below 1e-13.
int default_series_order(double gamma);

/// sinc^2(tau1 nu) (1 - cos(2 nu T)); always in [0, 2].
double unmodulated_integrand(double nu, double delay, double tau1);

/// sinc^2(tau1 nu) (2 - 2 cos(2 nu T - gamma sin(beta nu))); always in [0, 4].
double modulated_integrand_direct(double nu, double delay, double tau1, const PhaseFilter& filter);

/// sinc^2(tau1 nu) times the Bessel-expanded bracket
///   1 - J0 cos(2nuT) - 2 sum J_2n cos(2n beta nu) cos(2nuT)
///     - 2 sum J_{2n-1} sin((2n-1) beta nu) sin(2nuT),
/// keeping all Bessel orders <= n_max. Equals half the direct integrand up
/// to the truncation tail.
double modulated_integrand_series(double nu, double delay, double tau1, const PhaseFilter& filter,
                                  int n_max);

/// Normalized rate by quadrature (direct or series) or the closed form.
///
/// The quadrature routes integrate |nu| <= K / tau1 adaptively (K from
/// `spec`, rounded up to whole filter periods) and add the remaining
/// semi-infinite tail semi-analytically, so the result is the full-line
/// integral rather than a truncated one. Slightly negative results (down
/// to -1e-6, quadrature noise) are clamped to 0 with a warning; anything
/// lower throws ConvergenceError.
/// `n_max` defaults to default_series_order(gamma).
RatePoint coincidence_rate(double delay, const TimingParams& timing,
                           const std::optional<PhaseFilter>& filter, const QuadratureSpec& spec,
                           RateMethod method, std::optional<int> n_max = std::nullopt);

/// tri(x) = max(0, 1 - |x|) with an exact support test.
double triangle(double x);

/// Closed-form rate at fixed timing and filter, with the Bessel table
/// computed once. Cheap to call repeatedly across delays.
class ClosedFormRate {
 public:
  ClosedFormRate(const TimingParams& timing, const std::optional<PhaseFilter>& filter,
                 std::optional<int> n_max = std::nullopt);

  double operator()(double delay) const;

  /// Highest Bessel order kept (0 without a filter).
  int order() const { return order_; }
  double tau1() const { return tau1_; }
  /// Delay shift per Bessel order, beta / 2 (0 without a filter).
  double shift_per_order() const { return half_beta_; }

 private:
  double tau1_;
  double half_beta_ = 0.0;
  int order_ = 0;
  std::vector<double> bessel_;
};

/// Closed-form normalized rate:
///   1 - J0 tri(T/tau1) - sum_n J_2n [tri((T - n beta)/tau1) + tri((T + n beta)/tau1)]
///     - sum_n J_{2n-1} [tri((T - (2n-1) beta/2)/tau1) - tri((T + (2n-1) beta/2)/tau1)],
/// keeping Bessel orders <= n_max. Without a filter: 1 - tri(T/tau1).
RatePoint coincidence_rate_closed_form(double delay, const TimingParams& timing,
                                       const std::optional<PhaseFilter>& filter,
                                       std::optional<int> n_max = std::nullopt);

/// Warning sink used when a slightly negative quadrature result is clamped.
/// Defaults to standard error; pass an empty function to silence.
void set_warning_handler(std::function<void(std::string_view)> handler);

}  // namespace spdc
