#include "spdc/quadrature.hpp"

#include <cmath>
#include <sstream>

#include "spdc/params.hpp"

namespace spdc {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !std::isfinite(rel_tol)) {
    throw ConfigError("rel_tol", "rel_tol must be positive");
  }
  if (!(domain_halfwidth_factor >= 10.0) || !std::isfinite(domain_halfwidth_factor)) {
    throw ConfigError("domain_halfwidth_factor", "domain_halfwidth_factor must be at least 10");
  }
  if (max_subdivisions <= 0) {
    throw ConfigError("max_subdivisions", "max_subdivisions must be positive");
  }
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec, double abs_tol, long initial_panels) {
  spec.validate();
  auto result = adaptive_gauss_kronrod<double>(
      f, a, b, abs_tol, spec.rel_tol, spec.max_subdivisions, initial_panels,
      [](double v) { return std::abs(v); });
  if (!result.converged) {
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] did not converge after " << result.panels
        << " panels: estimate " << result.value << ", error " << result.error;
    throw ConvergenceError(msg.str(), result.value, result.error);
  }
  return result.value;
}

}  // namespace spdc
