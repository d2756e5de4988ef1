#include "spdc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include "spdc/format.hpp"

namespace spdc {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kGoldenRatioConjugate = 0.6180339887498948482;

std::string num(double v) { return format_exact(v); }

void require_points(int n_points) {
  if (n_points < 2) throw std::invalid_argument("sweep needs at least 2 points");
}

void require_ordered(double lo, double hi, const char* what) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw std::invalid_argument(std::string(what) + " range must be ordered and finite");
  }
}

double grid_point(double lo, double hi, int i, int n) {
  if (i == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

// Evaluates fn(i) for i in [0, n) on worker threads; results stay indexed, so
// the output is independent of completion order.
template <class Fn>
std::vector<double> parallel_evaluate(int n, Fn fn) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const unsigned workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(n)));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(i);
    return out;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        for (int i = static_cast<int>(w); i < n; i += static_cast<int>(workers)) {
          out[static_cast<std::size_t>(i)] = fn(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// Indices of up to `count` distinct sweep points, chosen reproducibly.
std::vector<int> spot_check_indices(int n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> picked;
  count = std::min(count, n);
  while (static_cast<int>(picked.size()) < count) {
    const int i = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    if (std::find(picked.begin(), picked.end(), i) == picked.end()) picked.push_back(i);
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

void append_common_metadata(Curve& curve, const TimingParams& timing,
                            const QuadratureSpec& spec, const ScanOptions& options) {
  curve.metadata.emplace_back("tau1_fs", num(timing.tau1));
  curve.metadata.emplace_back("tau2_fs", num(timing.tau2));
  curve.metadata.emplace_back("method", std::string(to_string(options.method)));
  curve.metadata.emplace_back("spot_checks", std::to_string(options.spot_checks));
  curve.metadata.emplace_back("seed", std::to_string(options.seed));
  curve.metadata.emplace_back("rel_tol", num(spec.rel_tol));
  curve.metadata.emplace_back("domain_halfwidth_factor", num(spec.domain_halfwidth_factor));
  curve.metadata.emplace_back("max_subdivisions", std::to_string(spec.max_subdivisions));
}

}  // namespace

void Curve::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].x) || !std::isfinite(samples[i].y)) {
      throw std::invalid_argument("curve sample " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(samples[i].x > samples[i - 1].x)) {
      throw std::invalid_argument("curve abscissae are not strictly increasing at sample " +
                                  std::to_string(i));
    }
  }
}

Curve delay_scan(const TimingParams& timing, const std::optional<PhaseFilter>& filter,
                 double delay_lo, double delay_hi, int n_points, const QuadratureSpec& spec,
                 double scale, const ScanOptions& options) {
  require_points(n_points);
  require_ordered(delay_lo, delay_hi, "delay");
  if (!(scale > 0.0)) throw std::invalid_argument("delay_scan: scale must be positive");
  spec.validate();

  std::vector<double> delays(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    delays[static_cast<std::size_t>(i)] = grid_point(delay_lo, delay_hi, i, n_points);
  }

  std::vector<double> rates;
  if (options.method == RateMethod::closed_form) {
    const ClosedFormRate rate(timing, filter);
    rates.reserve(delays.size());
    for (double t : delays) rates.push_back(rate(t));

    const auto checks = spot_check_indices(n_points, options.spot_checks, options.seed);
    const auto quad = parallel_evaluate(static_cast<int>(checks.size()), [&](int j) {
      const double t = delays[static_cast<std::size_t>(checks[static_cast<std::size_t>(j)])];
      return coincidence_rate(t, timing, filter, spec, RateMethod::direct).rate;
    });
    for (std::size_t j = 0; j < checks.size(); ++j) {
      const auto i = static_cast<std::size_t>(checks[j]);
      if (std::abs(quad[j] - rates[i]) > kSpotCheckTolerance) {
        std::ostringstream msg;
        msg << "spot check failed at T = " << delays[i] << " fs: closed form " << rates[i]
            << ", quadrature " << quad[j];
        throw SpotCheckError(msg.str());
      }
    }
  } else {
    rates = parallel_evaluate(n_points, [&](int i) {
      return coincidence_rate(delays[static_cast<std::size_t>(i)], timing, filter, spec,
                              options.method)
          .rate;
    });
  }

  Curve curve;
  curve.x_label = "tau_prime";
  curve.y_label = "rate";
  for (int i = 0; i < n_points; ++i) {
    const auto k = static_cast<std::size_t>(i);
    curve.samples.push_back({effective_delay(delays[k], scale), rates[k]});
  }
  curve.metadata.emplace_back("experiment", "delay_scan");
  curve.metadata.emplace_back("delay_min_fs", num(delay_lo));
  curve.metadata.emplace_back("delay_max_fs", num(delay_hi));
  curve.metadata.emplace_back("points", std::to_string(n_points));
  curve.metadata.emplace_back("tau_prime_scale_per_fs", num(scale));
  curve.metadata.emplace_back("filter", filter ? "on" : "off");
  if (filter) {
    curve.metadata.emplace_back("gamma", num(filter->gamma));
    curve.metadata.emplace_back("beta_fs", num(filter->beta));
  }
  append_common_metadata(curve, timing, spec, options);
  curve.validate();
  return curve;
}

Curve gamma_scan(const TimingParams& timing, double beta, double delay, double gamma_lo,
                 double gamma_hi, int n_points, const QuadratureSpec& spec,
                 const ScanOptions& options) {
  require_points(n_points);
  require_ordered(gamma_lo, gamma_hi, "gamma");
  spec.validate();

  std::vector<double> gammas(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    gammas[static_cast<std::size_t>(i)] = grid_point(gamma_lo, gamma_hi, i, n_points);
  }
  auto evaluate = [&](int i, RateMethod method) {
    const auto filter = PhaseFilter::from_gamma(gammas[static_cast<std::size_t>(i)], beta);
    return coincidence_rate(delay, timing, filter, spec, method).rate;
  };

  std::vector<double> rates;
  if (options.method == RateMethod::closed_form) {
    rates.reserve(gammas.size());
    for (int i = 0; i < n_points; ++i) rates.push_back(evaluate(i, RateMethod::closed_form));
    const auto checks = spot_check_indices(n_points, options.spot_checks, options.seed);
    const auto quad = parallel_evaluate(static_cast<int>(checks.size()), [&](int j) {
      return evaluate(checks[static_cast<std::size_t>(j)], RateMethod::direct);
    });
    for (std::size_t j = 0; j < checks.size(); ++j) {
      const auto i = static_cast<std::size_t>(checks[j]);
      if (std::abs(quad[j] - rates[i]) > kSpotCheckTolerance) {
        std::ostringstream msg;
        msg << "spot check failed at gamma = " << gammas[i] << ": closed form " << rates[i]
            << ", quadrature " << quad[j];
        throw SpotCheckError(msg.str());
      }
    }
  } else {
    rates = parallel_evaluate(n_points, [&](int i) { return evaluate(i, options.method); });
  }

  Curve curve;
  curve.x_label = "gamma";
  curve.y_label = "rate";
  for (int i = 0; i < n_points; ++i) {
    const auto k = static_cast<std::size_t>(i);
    curve.samples.push_back({gammas[k], rates[k]});
  }
  curve.metadata.emplace_back("experiment", "gamma_scan");
  curve.metadata.emplace_back("gamma_min", num(gamma_lo));
  curve.metadata.emplace_back("gamma_max", num(gamma_hi));
  curve.metadata.emplace_back("points", std::to_string(n_points));
  curve.metadata.emplace_back("delay_fs", num(delay));
  curve.metadata.emplace_back("beta_fs", num(beta));
  append_common_metadata(curve, timing, spec, options);
  curve.validate();
  return curve;
}

OptimizationResult optimize_gamma(const TimingParams& timing, double beta, double delay,
                                  double bracket_lo, double bracket_hi, double tol) {
  if (!std::isfinite(bracket_lo) || !std::isfinite(bracket_hi) || !(bracket_lo < bracket_hi)) {
    throw std::invalid_argument("optimize_gamma: bracket must have positive width");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("optimize_gamma: tol must be positive");

  auto objective = [&](double gamma) {
    return ClosedFormRate(timing, PhaseFilter::from_gamma(gamma, beta))(delay);
  };

  // Bessel-weighted rates oscillate in gamma on a scale of ~pi, so a 0.05
  // grid separates competing maxima before the unimodal refinement.
  const double width = bracket_hi - bracket_lo;
  const int cells = std::clamp(static_cast<int>(std::ceil(width / 0.05)), 64, 200000);
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= cells; ++i) {
    const double value = objective(grid_point(bracket_lo, bracket_hi, i, cells + 1));
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  double lo = grid_point(bracket_lo, bracket_hi, std::max(best - 1, 0), cells + 1);
  double hi = grid_point(bracket_lo, bracket_hi, std::min(best + 1, cells), cells + 1);

  // Golden-section maximization; on equal values keep the left part.
  double c = hi - kGoldenRatioConjugate * (hi - lo);
  double d = lo + kGoldenRatioConjugate * (hi - lo);
  double fc = objective(c);
  double fd = objective(d);
  int iterations = 0;
  while (hi - lo > 0.5 * tol && iterations < 500) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kGoldenRatioConjugate * (hi - lo);
      fc = objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kGoldenRatioConjugate * (hi - lo);
      fd = objective(d);
    }
    ++iterations;
  }

  double gamma_star = fc >= fd ? c : d;
  double rate_star = std::max(fc, fd);
  const double f_lo = objective(bracket_lo);
  const double f_hi = objective(bracket_hi);
  if (f_lo >= rate_star) {
    gamma_star = bracket_lo;
    rate_star = f_lo;
  } else if (f_hi > rate_star) {
    gamma_star = bracket_hi;
    rate_star = f_hi;
  }
  return OptimizationResult{gamma_star, rate_star, iterations, bracket_lo, bracket_hi};
}

std::vector<double> rate_breakpoints(const ClosedFormRate& rate, double lo, double hi,
                                     double merge) {
  std::vector<double> points{lo, hi};
  const double tau1 = rate.tau1();
  for (int k = 0; k <= rate.order(); ++k) {
    const double shift = k * rate.shift_per_order();
    for (double centre : {-shift, shift}) {
      for (double p : {centre - tau1, centre, centre + tau1}) {
        if (p >= lo && p <= hi) points.push_back(p);
      }
    }
  }
  std::sort(points.begin(), points.end());
  std::vector<double> merged;
  for (double p : points) {
    if (merged.empty() || p - merged.back() > merge) merged.push_back(p);
  }
  if (merged.back() != hi) merged.push_back(hi);
  return merged;
}

PeakResult find_peak_delay(const TimingParams& timing, const std::optional<PhaseFilter>& filter,
                           double lo, double hi, double tol) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw std::invalid_argument("find_peak_delay: search range must be ordered");
  }
  if (!(tol >= 0.0)) throw std::invalid_argument("find_peak_delay: tol must be non-negative");
  const ClosedFormRate rate(timing, filter);
  if (lo == hi) return PeakResult{lo, rate(lo)};

  PeakResult best{lo, rate(lo)};
  for (double t : rate_breakpoints(rate, lo, hi, tol)) {
    const double value = rate(t);
    if (value > best.rate + kTieTolerance) best = PeakResult{t, value};
  }
  return best;
}

}  // namespace spdc
