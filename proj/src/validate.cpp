#include "spdc/validate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <ostream>
#include <random>

#include "spdc/correlation.hpp"
#include "spdc/format.hpp"
#include "spdc/specfun.hpp"

namespace spdc {

namespace {

CheckResult check(std::string name, double worst, double limit) {
  CheckResult r;
  r.name = std::move(name);
  r.passed = std::isfinite(worst) && worst <= limit;
  r.detail = "max deviation " + format_g(worst, 3) + " (limit " + format_g(limit, 3) + ")";
  return r;
}

// Runs `body` and converts any exception into a failed check.
CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const std::exception& ex) {
    return CheckResult{name, false, std::string("error: ") + ex.what()};
  }
}

}  // namespace

std::vector<RateTuple> random_rate_tuples(int count, double tau1, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<RateTuple> tuples;
  tuples.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    RateTuple t;
    t.gamma = 8.0 * unit(rng);
    t.beta = tau1 * (0.2 + 1.8 * unit(rng));
    const double span = 4.0 * tau1 + 8.0 * t.beta;
    t.delay = span * (2.0 * unit(rng) - 1.0);
    tuples.push_back(t);
  }
  return tuples;
}

std::vector<CheckResult> run_validation(const SimulationConfig& config,
                                        const ValidationOptions& options) {
  const TimingParams timing = config.timing();
  const QuadratureSpec& spec = config.quadrature;
  const double tau1 = timing.tau1;
  std::vector<CheckResult> results;

  results.push_back(guarded("bessel_sum_rule", [] {
    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.0, 4.0, 7.0, 10.0, 20.0}) {
      const auto j = bessel_j_table(series_truncation_order(x, 1e-16) + 10, x);
      double sum = j[0] * j[0];
      for (int n = 1; n <= j.order_max; ++n) sum += 2.0 * j[n] * j[n];
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    return check("bessel_sum_rule", worst, 1e-10);
  }));

  results.push_back(guarded("jacobi_anger", [] {
    double worst = 0.0;
    for (int ix = 0; ix < 40; ++ix) {
      const double x = 0.5 * ix;
      const auto j = bessel_j_table(series_truncation_order(x, 1e-15) + 10, x);
      for (int it = 0; it < 25; ++it) {
        const double theta = 2.0 * kPi * it / 25.0;
        double c = j[0];
        double s = 0.0;
        for (int n = 1; n <= j.order_max; ++n) {
          if (n % 2 == 0) {
            c += 2.0 * j[n] * std::cos(n * theta);
          } else {
            s += 2.0 * j[n] * std::sin(n * theta);
          }
        }
        worst = std::max({worst, std::abs(c - std::cos(x * std::sin(theta))),
                          std::abs(s - std::sin(x * std::sin(theta)))});
      }
    }
    return check("jacobi_anger", worst, 1e-9);
  }));

  results.push_back(guarded("unmodulated_dip", [&] {
    double worst = 0.0;
    const std::pair<double, double> cases[] = {{0.0, 0.0}, {0.5 * tau1, 0.5}, {tau1, 1.0}};
    for (const auto& [delay, expected] : cases) {
      const double r = coincidence_rate(delay, timing, std::nullopt, spec, RateMethod::direct).rate;
      worst = std::max(worst, std::abs(r - expected));
    }
    return check("unmodulated_dip", worst, 1e-6);
  }));

  results.push_back(guarded("unmodulated_symmetry", [&] {
    double worst = 0.0;
    for (double f : {0.13, 0.6, 0.97, 1.4}) {
      const double a = coincidence_rate(f * tau1, timing, std::nullopt, spec, RateMethod::direct).rate;
      const double b = coincidence_rate(-f * tau1, timing, std::nullopt, spec, RateMethod::direct).rate;
      const double ca = coincidence_rate_closed_form(f * tau1, timing, std::nullopt).rate;
      const double cb = coincidence_rate_closed_form(-f * tau1, timing, std::nullopt).rate;
      worst = std::max({worst, std::abs(a - b), ca == cb ? 0.0 : 1.0});
    }
    return check("unmodulated_symmetry", worst, 1e-9);
  }));

  const auto tuples = random_rate_tuples(options.tuples, tau1, options.seed);
  std::vector<double> direct(tuples.size());
  std::vector<double> series(tuples.size());
  std::vector<double> closed(tuples.size());
  CheckResult quadrature_run = guarded("quadrature_tuples", [&] {
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      const auto filter = PhaseFilter::from_gamma(tuples[i].gamma, tuples[i].beta);
      direct[i] = coincidence_rate(tuples[i].delay, timing, filter, spec, RateMethod::direct).rate;
      series[i] = coincidence_rate(tuples[i].delay, timing, filter, spec, RateMethod::series).rate;
      closed[i] = coincidence_rate_closed_form(tuples[i].delay, timing, filter).rate;
    }
    return CheckResult{"quadrature_tuples", true, std::to_string(tuples.size()) + " tuples"};
  });
  if (!quadrature_run.passed) {
    results.push_back(quadrature_run);
  } else {
    double ds = 0.0;
    double dc = 0.0;
    double lowest = 0.0;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      ds = std::max(ds, std::abs(direct[i] - series[i]));
      dc = std::max(dc, std::abs(direct[i] - closed[i]));
      lowest = std::min({lowest, direct[i], series[i], closed[i]});
    }
    results.push_back(check("direct_vs_series", ds, 1e-6));
    results.push_back(check("direct_vs_closed_form", dc, 1e-5));
    results.push_back(check("nonnegativity", -lowest, 0.0));
  }

  results.push_back(guarded("filter_off_reduction", [&] {
    const auto off = PhaseFilter::from_gamma(0.0, config.beta);
    const ClosedFormRate plain(timing, std::nullopt);
    const ClosedFormRate filtered(timing, off);
    double worst = 0.0;
    for (int i = 0; i < 401; ++i) {
      const double delay = -2.0 * tau1 + 4.0 * tau1 * i / 400.0;
      worst = std::max(worst, std::abs(plain(delay) - filtered(delay)));
    }
    for (double delay : {-1.3 * tau1, -0.4 * tau1, 0.0, 0.77 * tau1}) {
      const double a = coincidence_rate(delay, timing, std::nullopt, spec, RateMethod::direct).rate;
      const double b = coincidence_rate(delay, timing, off, spec, RateMethod::direct).rate;
      const double c = coincidence_rate(delay, timing, off, spec, RateMethod::series).rate;
      worst = std::max({worst, std::abs(a - b), std::abs(a - c)});
    }
    return check("filter_off_reduction", worst, 1e-9);
  }));

  results.push_back(guarded("zero_delay_parity", [&] {
    double worst = 0.0;
    for (double gamma : {1.0, 2.5, 4.0, 7.0}) {
      const auto filter = PhaseFilter::from_gamma(gamma, config.beta);
      const int n_max = default_series_order(gamma);
      const auto j = bessel_j_table(n_max, gamma);
      double even_only = 1.0 - j[0];
      for (int n = 2; n <= n_max; n += 2) {
        even_only -= 2.0 * j[n] * triangle((n / 2) * config.beta / tau1);
      }
      const double closed_rate = coincidence_rate_closed_form(0.0, timing, filter, n_max).rate;
      worst = std::max(worst, std::abs(closed_rate - even_only));
    }
    return check("zero_delay_parity", worst, 1e-14);
  }));

  results.push_back(guarded("baseline_saturation", [&] {
    double worst = 0.0;
    for (double gamma : {0.5, 4.0, 7.0}) {
      const auto filter = PhaseFilter::from_gamma(gamma, config.beta);
      const ClosedFormRate rate(timing, filter);
      const double edge = tau1 + rate.order() * config.beta;
      for (double delay : {edge * 1.0001, -edge * 1.0001, 3.0 * edge}) {
        worst = std::max(worst, std::abs(rate(delay) - 1.0));
      }
    }
    return check("baseline_saturation", worst, 0.0);
  }));

  results.push_back(guarded("unit_scale_invariance", [&] {
    constexpr double k = 2.5;
    const TimingParams scaled{k * tau1, k * timing.tau2};
    double worst = 0.0;
    for (const auto& [delay, gamma] : {std::pair{0.3 * tau1, 4.0}, std::pair{-1.1 * tau1, 7.0}}) {
      const auto f1 = PhaseFilter::from_gamma(gamma, config.beta);
      const auto f2 = PhaseFilter::from_gamma(gamma, k * config.beta);
      const double a = coincidence_rate(delay, timing, f1, spec, RateMethod::direct).rate;
      const double b = coincidence_rate(k * delay, scaled, f2, spec, RateMethod::direct).rate;
      worst = std::max(worst, std::abs(a - b));
    }
    return check("unit_scale_invariance", worst, 1e-9);
  }));

  return results;
}

bool print_report(const std::vector<CheckResult>& results, std::ostream& out) {
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  out << (all ? "all checks passed" : "some checks FAILED") << '\n';
  return all;
}

}  // namespace spdc
