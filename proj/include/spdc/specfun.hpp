#pragma once

#include <vector>

namespace spdc {

/// Unnormalized sinc, sin(x)/x, with sinc(0) = 1.
double sinc(double x);

/// J_0(x) .. J_{order_max}(x) for a single real argument.
struct BesselTable {
  int order_max = 0;
  double argument = 0.0;
  std::vector<double> values;

  double operator[](int n) const { return values[static_cast<std::size_t>(n)]; }
};

/// Bessel functions of the first kind, orders 0..n_max, by Miller's backward
/// recurrence normalized with J_0 + 2 J_2 + 2 J_4 + ... = 1.
///
/// Validated to an absolute error of 1e-12 per entry for |x| <= 1000.
/// Throws std::invalid_argument for n_max < 0 or non-finite x.
BesselTable bessel_j_table(int n_max, double x);

/// Smallest order N with sum_{n >= N} |J_n(gamma)| < eps / 10, so that both
/// |J_N(gamma)| and the tail beyond N are below eps. The tail beyond the
/// computed table is bounded by the power-series majorant (|x|/2)^n / n!.
int series_truncation_order(double gamma, double eps);

}  // namespace spdc
