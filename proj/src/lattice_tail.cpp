#include "lattice_tail.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "spdc/params.hpp"
#include "spdc/quadrature.hpp"

namespace spdc::detail {

namespace {

using cplx = std::complex<double>;

constexpr int kMoments = 18;
constexpr double kTailTol = 1e-14;

struct MomentVector {
  std::array<cplx, kMoments> m{};

  MomentVector operator+(const MomentVector& o) const {
    MomentVector r;
    for (int k = 0; k < kMoments; ++k) r.m[k] = m[k] + o.m[k];
    return r;
  }
  MomentVector operator*(double s) const {
    MomentVector r;
    for (int k = 0; k < kMoments; ++k) r.m[k] = m[k] * s;
    return r;
  }
};

double moment_norm(const MomentVector& v) {
  double n = 0.0;
  for (const auto& c : v.m) n = std::max(n, std::abs(c));
  return n;
}

}  // namespace

cplx lattice_sum(cplx z, int order, int first) {
  if (order < 2 || first < 1) {
    throw std::invalid_argument("lattice_sum: need order >= 2 and first >= 1");
  }
  // z^J / (m-1)! * int_0^inf t^{m-1} e^{-J t} / (1 - z e^{-t}) dt
  const double j = first;
  const double t_max = (order - 1 + 60.0) / j;
  const double log_norm = -std::lgamma(static_cast<double>(order));
  auto integrand = [&](double t) {
    const cplx denom = (1.0 - z) - z * std::expm1(-t);
    const double weight = std::exp((order - 1) * std::log(t) - j * t + log_norm);
    return weight / denom;
  };
  auto result = adaptive_gauss_kronrod<cplx>(integrand, 0.0, t_max, 0.0, kTailTol, 20000, 8,
                                             [](const cplx& c) { return std::abs(c); });
  if (!result.converged) {
    throw ConvergenceError("lattice_sum did not converge", std::abs(result.value), result.error);
  }
  return std::pow(z, j) * result.value;
}

cplx lattice_tail(double frequency, const PeriodicFn& periodic, double bandwidth, double period,
                  int first_cell) {
  if (first_cell < 8) {
    throw std::invalid_argument("lattice_tail: first_cell must be at least 8");
  }
  const double phase_per_period = frequency * period;
  auto integrand = [&](double u) {
    const cplx base = std::exp(cplx(0.0, phase_per_period * u)) * periodic(2.0 * kPi * u);
    MomentVector v;
    double power = 1.0;
    for (int k = 0; k < kMoments; ++k) {
      v.m[k] = base * power;
      power *= u;
    }
    return v;
  };
  const long panels =
      2 + static_cast<long>(std::ceil((std::abs(phase_per_period) + 2.0 * kPi * bandwidth) / kPi));
  auto moments = adaptive_gauss_kronrod<MomentVector>(integrand, 0.0, 1.0, 0.0, kTailTol,
                                                      200000, panels, moment_norm);
  if (!moments.converged) {
    throw ConvergenceError("lattice_tail moments did not converge", 0.0, moments.error);
  }

  const cplx z = std::exp(cplx(0.0, std::remainder(phase_per_period, 2.0 * kPi)));
  cplx sum = 0.0;
  for (int k = 0; k < kMoments; ++k) {
    const double coeff = (k % 2 == 0 ? 1.0 : -1.0) * (k + 1);
    sum += coeff * moments.value.m[k] * lattice_sum(z, k + 2, first_cell);
  }
  return sum / period;
}

}  // namespace spdc::detail
