#pragma once

// Semi-infinite oscillatory integrals with a 1/nu^2 envelope,
//
//   I = int_{J P}^{inf} exp(i a nu) W(2 pi nu / P) / nu^2 dnu,
//
// where W is 2 pi periodic. Splitting the range into whole periods of W and
// expanding 1/(j + u)^2 in powers of u/j turns I into per-period moments of
// the integrand times Lerch-type lattice sums sum_{j >= J} z^j / j^m, which
// converge absolutely and are evaluated through their Laplace integral
// representation. Resonant frequencies (z -> 1) need no special handling.

#include <complex>
#include <functional>

namespace spdc::detail {

using PeriodicFn = std::function<std::complex<double>(double theta)>;

/// sum_{j >= first} z^j / j^order for |z| = 1, order >= 2, first >= 1.
std::complex<double> lattice_sum(std::complex<double> z, int order, int first);

/// The integral I above. `bandwidth` bounds |d/dtheta arg W| and sizes the
/// initial quadrature partition of one period.
std::complex<double> lattice_tail(double frequency, const PeriodicFn& periodic, double bandwidth,
                                  double period, int first_cell);

}  // namespace spdc::detail
