#include "spdc/correlation.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>

#include "lattice_tail.hpp"
#include "spdc/specfun.hpp"

namespace spdc {

namespace {

using cplx = std::complex<double>;

constexpr double kSeriesTailEps = 1e-13;
constexpr double kClampFloor = -1e-6;
constexpr int kMinTailCells = 16;

std::mutex g_warning_mutex;
std::function<void(std::string_view)> g_warning_handler = [](std::string_view msg) {
  std::cerr << "warning: " << msg << '\n';
};

void warn(const std::string& msg) {
  std::lock_guard<std::mutex> lock(g_warning_mutex);
  if (g_warning_handler) g_warning_handler(msg);
}

void require_timing(const TimingParams& timing) {
  if (!(timing.tau1 > 0.0) || !std::isfinite(timing.tau1)) {
    throw ConfigError("tau1", "tau1 must be positive");
  }
}

// Bracket of the expanded integrand: 1 - Re[exp(2 i nu T) W(beta nu)] with
// W(theta) = J0 + sum_k J_k (exp(-i k theta) + (-1)^k exp(i k theta)).
class SeriesBracket {
 public:
  SeriesBracket(double gamma, double beta, int n_max)
      : beta_(beta), table_(bessel_j_table(std::max(n_max, 0), gamma)) {}

  // J0 + 2 sum J_2n cos(2n theta)  and  2 sum J_{2n-1} sin((2n-1) theta)
  void even_odd(double theta, double& even, double& odd) const {
    even = table_[0];
    odd = 0.0;
    const cplx step(std::cos(theta), std::sin(theta));
    cplx rot = step;
    for (int k = 1; k <= table_.order_max; ++k) {
      if (k % 2 == 0) {
        even += 2.0 * table_[k] * rot.real();
      } else {
        odd += 2.0 * table_[k] * rot.imag();
      }
      rot *= step;
    }
  }

  double operator()(double nu, double delay) const {
    double even = 0.0;
    double odd = 0.0;
    even_odd(beta_ * nu, even, odd);
    const double phase = 2.0 * nu * delay;
    return 1.0 - std::cos(phase) * even - std::sin(phase) * odd;
  }

  cplx periodic(double theta) const {
    double even = 0.0;
    double odd = 0.0;
    even_odd(theta, even, odd);
    return cplx(even, -odd);
  }

  int order() const { return table_.order_max; }

 private:
  double beta_;
  BesselTable table_;
};

// int_A^inf sinc^2(tau1 nu) (1 - Re[exp(2 i T nu) W(beta nu)]) dnu with
// A = cells * period, using sin^2 x = 1/2 - (e^{2ix} + e^{-2ix}) / 4.
double bracket_tail(double tau1, double delay, const detail::PeriodicFn& periodic,
                    double bandwidth, double period, int cells) {
  const double start = cells * period;
  const detail::PeriodicFn one = [](double) { return cplx(1.0, 0.0); };
  const double envelope =
      0.5 / start - 0.5 * detail::lattice_tail(2.0 * tau1, one, 0.0, period, cells).real();
  const cplx mixed = 0.5 * detail::lattice_tail(2.0 * delay, periodic, bandwidth, period, cells) -
                     0.25 * detail::lattice_tail(2.0 * delay + 2.0 * tau1, periodic, bandwidth,
                                                 period, cells) -
                     0.25 * detail::lattice_tail(2.0 * delay - 2.0 * tau1, periodic, bandwidth,
                                                 period, cells);
  return (envelope - mixed.real()) / (tau1 * tau1);
}

}  // namespace

void set_warning_handler(std::function<void(std::string_view)> handler) {
  std::lock_guard<std::mutex> lock(g_warning_mutex);
  g_warning_handler = std::move(handler);
}

std::string_view to_string(RateMethod method) {
  switch (method) {
    case RateMethod::direct:
      return "direct";
    case RateMethod::series:
      return "series";
    case RateMethod::closed_form:
      return "closed_form";
  }
  return "closed_form";
}

RateMethod parse_rate_method(std::string_view text) {
  if (text == "direct") return RateMethod::direct;
  if (text == "series") return RateMethod::series;
  if (text == "closed_form") return RateMethod::closed_form;
  throw ConfigError("method", "unknown method '" + std::string(text) +
                                  "' (expected direct, series or closed_form)");
}

int default_series_order(double gamma) { return series_truncation_order(gamma, kSeriesTailEps); }

double unmodulated_integrand(double nu, double delay, double tau1) {
  const double s = sinc(tau1 * nu);
  return s * s * (1.0 - std::cos(2.0 * nu * delay));
}

double modulated_integrand_direct(double nu, double delay, double tau1,
                                  const PhaseFilter& filter) {
  const double s = sinc(tau1 * nu);
  const double phase = 2.0 * nu * delay - filter.gamma * std::sin(filter.beta * nu);
  return s * s * (2.0 - 2.0 * std::cos(phase));
}

double modulated_integrand_series(double nu, double delay, double tau1, const PhaseFilter& filter,
                                  int n_max) {
  const SeriesBracket bracket(filter.gamma, filter.beta, n_max);
  const double s = sinc(tau1 * nu);
  return s * s * bracket(nu, delay);
}

RatePoint coincidence_rate(double delay, const TimingParams& timing,
                           const std::optional<PhaseFilter>& filter, const QuadratureSpec& spec,
                           RateMethod method, std::optional<int> n_max) {
  if (method == RateMethod::closed_form) {
    return coincidence_rate_closed_form(delay, timing, filter, n_max);
  }
  require_timing(timing);
  spec.validate();
  if (!std::isfinite(delay)) throw std::invalid_argument("coincidence_rate: delay must be finite");

  const double tau1 = timing.tau1;
  const double baseline = kPi / tau1;

  // The bracket is even in nu, so integrate the half line and double.
  std::function<double(double)> head;
  detail::PeriodicFn periodic = [](double) { return cplx(1.0, 0.0); };
  double bandwidth = 0.0;
  double period = kPi / tau1;  // any period works when the bracket has no filter
  double spread = 0.0;         // bound on the filter's contribution to the local frequency

  std::optional<SeriesBracket> series;
  if (!filter) {
    head = [=](double nu) { return unmodulated_integrand(nu, delay, tau1); };
  } else {
    const PhaseFilter f = *filter;
    period = 2.0 * kPi / f.beta;
    if (method == RateMethod::direct) {
      head = [=](double nu) { return 0.5 * modulated_integrand_direct(nu, delay, tau1, f); };
      periodic = [g = f.gamma](double theta) {
        return std::exp(cplx(0.0, -g * std::sin(theta)));
      };
      bandwidth = std::abs(f.gamma);
      spread = std::abs(f.gamma) * f.beta;
    } else {
      series.emplace(f.gamma, f.beta, n_max.value_or(default_series_order(f.gamma)));
      const SeriesBracket* bracket = &*series;
      head = [=](double nu) {
        const double s = sinc(tau1 * nu);
        return s * s * (*bracket)(nu, delay);
      };
      periodic = [bracket](double theta) { return bracket->periodic(theta); };
      bandwidth = bracket->order();
      spread = bracket->order() * f.beta;
    }
  }

  const int cells = std::max(
      kMinTailCells,
      static_cast<int>(std::ceil(spec.domain_halfwidth_factor / (tau1 * period))));
  const double upper = cells * period;
  const double local_frequency = 2.0 * std::abs(delay) + 2.0 * tau1 + spread;
  const long panels = 1 + static_cast<long>(std::ceil(upper * local_frequency / (2.0 * kPi)));

  const double head_value =
      integrate(head, 0.0, upper, spec, 0.25 * spec.rel_tol * baseline, panels);
  const double tail_value = bracket_tail(tau1, delay, periodic, bandwidth, period, cells);

  double rate = 2.0 * (head_value + tail_value) / baseline;
  if (rate < 0.0) {
    if (rate < kClampFloor) {
      std::ostringstream msg;
      msg << "coincidence rate " << rate << " at T = " << delay << " fs is negative beyond noise";
      throw ConvergenceError(msg.str(), rate, -rate);
    }
    std::ostringstream msg;
    msg << "clamping quadrature rate " << rate << " at T = " << delay << " fs to 0";
    warn(msg.str());
    rate = 0.0;
  }
  return RatePoint{delay, rate, method};
}

double triangle(double x) {
  const double ax = std::abs(x);
  if (ax >= 1.0) return 0.0;
  return 1.0 - ax;
}

ClosedFormRate::ClosedFormRate(const TimingParams& timing,
                               const std::optional<PhaseFilter>& filter,
                               std::optional<int> n_max)
    : tau1_(timing.tau1) {
  require_timing(timing);
  if (!filter) {
    bessel_ = {1.0};
    return;
  }
  if (!(filter->beta > 0.0)) throw ConfigError("beta", "beta must be positive");
  order_ = n_max.value_or(default_series_order(filter->gamma));
  if (order_ < 0) throw std::invalid_argument("ClosedFormRate: n_max must be non-negative");
  half_beta_ = 0.5 * filter->beta;
  bessel_ = bessel_j_table(order_, filter->gamma).values;
}

double ClosedFormRate::operator()(double delay) const {
  double rate = 1.0 - bessel_[0] * triangle(delay / tau1_);
  for (int k = 1; k <= order_; ++k) {
    const double shift = k * half_beta_;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    rate -= bessel_[static_cast<std::size_t>(k)] *
            (triangle((delay - shift) / tau1_) + sign * triangle((delay + shift) / tau1_));
  }
  return rate;
}

RatePoint coincidence_rate_closed_form(double delay, const TimingParams& timing,
                                       const std::optional<PhaseFilter>& filter,
                                       std::optional<int> n_max) {
  const ClosedFormRate rate(timing, filter, n_max);
  return RatePoint{delay, rate(delay), RateMethod::closed_form};
}

}  // namespace spdc
