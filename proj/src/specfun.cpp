#include "spdc/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spdc {

double sinc(double x) {
  // Below the switch the next Taylor term is under double round-off.
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

BesselTable bessel_j_table(int n_max, double x) {
  if (n_max < 0) {
    throw std::invalid_argument("bessel_j_table: n_max must be non-negative");
  }
  if (!std::isfinite(x)) {
    throw std::invalid_argument("bessel_j_table: argument must be finite");
  }

  BesselTable table;
  table.order_max = n_max;
  table.argument = x;
  table.values.assign(static_cast<std::size_t>(n_max) + 1, 0.0);

  const double ax = std::abs(x);
  if (ax == 0.0) {
    table.values[0] = 1.0;
    return table;
  }

  // Start well above both the requested order and the turning point n ~ x,
  // where J_n decays faster than exponentially.
  const int n_top = std::max(n_max, static_cast<int>(std::ceil(ax)));
  int start = n_top + 20 + static_cast<int>(std::ceil(std::sqrt(160.0 * (n_top + 1))));
  start += start % 2;

  constexpr double kRescaleAbove = 1e200;
  constexpr double kRescaleBy = 1e-200;

  const double two_over_x = 2.0 / ax;
  double above = 0.0;    // j_{k+1}
  double current = 1e-30;  // j_k
  double norm = 0.0;     // j_0 + 2 (j_2 + j_4 + ...)

  for (int k = start; k >= 1; --k) {
    if (k <= n_max) table.values[static_cast<std::size_t>(k)] = current;
    if (k % 2 == 0) norm += 2.0 * current;

    const double below = k * two_over_x * current - above;
    above = current;
    current = below;

    if (std::abs(current) > kRescaleAbove) {
      current *= kRescaleBy;
      above *= kRescaleBy;
      norm *= kRescaleBy;
      for (int i = k; i <= n_max; ++i) table.values[static_cast<std::size_t>(i)] *= kRescaleBy;
    }
  }
  table.values[0] = current;
  norm += current;

  for (double& v : table.values) v /= norm;

  if (x < 0.0) {
    for (int n = 1; n <= n_max; n += 2) table.values[static_cast<std::size_t>(n)] = -table.values[static_cast<std::size_t>(n)];
  }
  return table;
}

int series_truncation_order(double gamma, double eps) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("series_truncation_order: eps must be positive");
  }
  if (!std::isfinite(gamma)) {
    throw std::invalid_argument("series_truncation_order: gamma must be finite");
  }
  const double ax = std::abs(gamma);
  const double target = eps / 10.0;

  // |J_n(x)| <= (x/2)^n / n!; beyond n_hi the majorant sums to at most
  // twice its first term because the ratio of successive terms is < 1/2.
  auto log_majorant = [ax](int n) {
    return n * std::log(ax / 2.0) - std::lgamma(n + 1.0);
  };
  int n_hi = static_cast<int>(std::ceil(ax)) + 60;
  double certificate = 0.0;
  if (ax > 0.0) {
    while (ax / 2.0 >= 0.5 * (n_hi + 2) || log_majorant(n_hi + 1) + std::log(2.0) > std::log(target / 100.0)) {
      n_hi += 10;
    }
    certificate = 2.0 * std::exp(log_majorant(n_hi + 1));
  }

  const BesselTable table = bessel_j_table(n_hi, gamma);
  double tail = certificate;
  int order = n_hi + 1;
  for (int n = n_hi; n >= 0; --n) {
    tail += std::abs(table[n]);
    if (tail >= target) break;
    order = n;
  }
  return order;
}

}  // namespace spdc
