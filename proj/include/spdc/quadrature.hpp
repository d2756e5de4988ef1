#pragma once

// Globally adaptive Gauss-Kronrod (10/21 point) quadrature.
//
// The core routine is a template over the value type so that the same
// refinement logic serves real, complex and small vector-valued integrands.
// A value type V needs V + V, V * double, a value-initialized zero and a
// caller-supplied norm.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace spdc {

/// Integration controls for coincidence-rate quadrature.
struct QuadratureSpec {
  double rel_tol = 1e-8;
  /// Integration runs over |nu| <= domain_halfwidth_factor / tau1 before the
  /// semi-analytic tail takes over.
  double domain_halfwidth_factor = 200.0;
  /// Cap on the number of panels the adaptive refinement may evaluate.
  long max_subdivisions = 1'000'000;

  void validate() const;

  bool operator==(const QuadratureSpec&) const = default;
};

/// The adaptive refinement hit its panel cap before meeting the tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

template <class V>
struct QuadratureResult {
  V value{};
  double error = 0.0;
  long panels = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 11> kKronrodNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kKronrodWeights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, ..., 9).
inline constexpr std::array<double, 5> kGaussWeights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class V>
struct Panel {
  double a;
  double b;
  V value;
  double error;
  bool operator<(const Panel& other) const {
    if (error != other.error) return error < other.error;
    return a > other.a;  // deterministic order among equal errors
  }
};

template <class V, class F, class Norm>
Panel<V> gauss_kronrod21(F& f, double a, double b, Norm& norm) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const V fc = f(centre);
  V kronrod = fc * kKronrodWeights[10];
  V gauss{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kKronrodNodes[static_cast<std::size_t>(j)];
    const V sum = f(centre - dx) + f(centre + dx);
    kronrod = kronrod + sum * kKronrodWeights[static_cast<std::size_t>(j)];
    if (j % 2 == 1) gauss = gauss + sum * kGaussWeights[static_cast<std::size_t>(j / 2)];
  }
  kronrod = kronrod * half;
  gauss = gauss * half;
  return Panel<V>{a, b, kronrod, norm(kronrod + gauss * -1.0)};
}

}  // namespace detail

/// Adaptive integration of f over [a, b], starting from `initial_panels`
/// equal panels and bisecting the panel with the largest error estimate
/// until the summed error is below max(abs_tol, rel_tol * norm(value)) or
/// `max_panels` panels have been evaluated. Never throws on non-convergence;
/// inspect `converged`.
template <class V, class F, class Norm>
QuadratureResult<V> adaptive_gauss_kronrod(F&& f, double a, double b, double abs_tol,
                                           double rel_tol, long max_panels,
                                           long initial_panels, Norm norm) {
  QuadratureResult<V> result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  initial_panels = std::max(1L, std::min(initial_panels, max_panels));

  std::priority_queue<detail::Panel<V>> queue;
  V total{};
  double total_error = 0.0;
  double magnitude = 0.0;  // sum of panel norms, scale for the round-off floor
  const double width = (b - a) / static_cast<double>(initial_panels);
  for (long i = 0; i < initial_panels; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = (i + 1 == initial_panels) ? b : a + width * static_cast<double>(i + 1);
    auto panel = detail::gauss_kronrod21<V>(f, lo, hi, norm);
    total = total + panel.value;
    total_error += panel.error;
    magnitude += norm(panel.value);
    queue.push(std::move(panel));
  }
  long panels = initial_panels;

  constexpr double kRoundOff = 100.0 * 2.220446049250313e-16;
  auto tolerance = [&] {
    return std::max({abs_tol, rel_tol * norm(total), kRoundOff * magnitude});
  };
  while (total_error > tolerance() && panels + 2 <= max_panels) {
    const detail::Panel<V> worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Panel cannot be split further in double precision.
      queue.push(worst);
      break;
    }
    auto left = detail::gauss_kronrod21<V>(f, worst.a, mid, norm);
    auto right = detail::gauss_kronrod21<V>(f, mid, worst.b, norm);
    panels += 2;
    total = total + left.value + right.value + worst.value * -1.0;
    total_error += left.error + right.error - worst.error;
    magnitude += norm(left.value) + norm(right.value) - norm(worst.value);
    queue.push(std::move(left));
    queue.push(std::move(right));
  }

  // Re-sum from the panels to shed accumulated update round-off.
  V resummed{};
  double error_sum = 0.0;
  std::vector<detail::Panel<V>> remaining;
  remaining.reserve(queue.size());
  while (!queue.empty()) {
    remaining.push_back(queue.top());
    queue.pop();
  }
  std::sort(remaining.begin(), remaining.end(),
            [](const auto& l, const auto& r) { return l.a < r.a; });
  for (const auto& p : remaining) {
    resummed = resummed + p.value;
    error_sum += p.error;
  }

  result.value = resummed;
  result.error = error_sum;
  result.panels = panels;
  result.converged =
      error_sum <= std::max({abs_tol, rel_tol * norm(resummed), kRoundOff * magnitude});
  return result;
}

/// Real-valued adaptive integration with the tolerance and panel cap from
/// `spec`. Throws ConvergenceError (carrying the best estimate and its
/// error) when the cap is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec, double abs_tol = 0.0, long initial_panels = 1);

}  // namespace spdc
