#include <doctest.h>

#include <cmath>
#include <complex>

#include "lattice_tail.hpp"
#include "spdc/params.hpp"
#include "spdc/quadrature.hpp"
#include "spdc/specfun.hpp"

using namespace spdc;

TEST_CASE("elementary integrals") {
  const QuadratureSpec spec;
  CHECK(integrate([](double) { return 1.0; }, 0.0, 2.0, spec) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(integrate([](double x) { return std::cos(10.0 * x); }, 0.0, kPi, spec, 1e-12)) < 1e-12);
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0, spec) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, spec) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(integrate([](double) { return 1.0; }, 3.0, 3.0, spec) == 0.0);
}

TEST_CASE("sinc squared over a finite window") {
  const QuadratureSpec spec;
  // 2 * int_0^50 sinc^2, to 20 digits.
  const double value = integrate([](double x) { return sinc(x) * sinc(x); }, -50.0, 50.0, spec, 0.0, 32);
  CHECK(value == doctest::Approx(3.1216973112238662654).epsilon(1e-12));
  // The missing tail is close to 1/A.
  CHECK((kPi - value) * 50.0 == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("panel cap raises ConvergenceError with the best estimate") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-14;
  spec.max_subdivisions = 3;
  try {
    integrate([](double x) { return std::sin(200.0 * x) * std::sin(200.0 * x); }, 0.0, 10.0, spec);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.estimate()));
    CHECK(e.error() > 0.0);
  }
}

TEST_CASE("quadrature is deterministic") {
  const QuadratureSpec spec;
  auto f = [](double x) { return std::cos(x * x) * sinc(x); };
  CHECK(integrate(f, -20.0, 20.0, spec) == integrate(f, -20.0, 20.0, spec));
}

TEST_CASE("spec validation") {
  QuadratureSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.rel_tol = 0.0;
  CHECK_THROWS(spec.validate());
  spec = QuadratureSpec{};
  spec.domain_halfwidth_factor = 1.0;
  CHECK_THROWS(spec.validate());
  spec = QuadratureSpec{};
  spec.max_subdivisions = 0;
  CHECK_THROWS(spec.validate());
}

TEST_CASE("complex-valued adaptive integration") {
  auto f = [](double x) { return std::exp(std::complex<double>(0.0, 3.0 * x)); };
  const auto r = adaptive_gauss_kronrod<std::complex<double>>(
      f, 0.0, 1.0, 0.0, 1e-13, 1000, 1, [](std::complex<double> v) { return std::abs(v); });
  const std::complex<double> expected = (std::exp(std::complex<double>(0.0, 3.0)) - 1.0) /
                                        std::complex<double>(0.0, 3.0);
  CHECK(r.converged);
  CHECK(std::abs(r.value - expected) < 1e-13);
}

TEST_CASE("lattice sums") {
  using detail::lattice_sum;
  // zeta(2) minus its first 15 terms.
  CHECK(lattice_sum(1.0, 2, 16).real() == doctest::Approx(0.064493783403239361782).epsilon(1e-12));
  // Alternating: sum_{j>=1} (-1)^j / j^2 = -pi^2 / 12.
  CHECK(lattice_sum(-1.0, 2, 1).real() == doctest::Approx(-kPi * kPi / 12.0).epsilon(1e-12));
  // Brute-force partial sum check at a generic phase.
  const std::complex<double> z = std::polar(1.0, 0.7);
  std::complex<double> brute = 0.0;
  for (int j = 20; j < 2000000; ++j) brute += std::pow(z, j) / std::pow(double(j), 3);
  CHECK(std::abs(lattice_sum(z, 3, 20) - brute) < 1e-12);
}

TEST_CASE("semi-infinite tail of 1/nu^2 with a flat periodic factor") {
  using detail::lattice_tail;
  const double period = 2.0 * kPi / 50.0;
  const int first = 16;
  const double a = first * period;
  auto flat = [](double) { return std::complex<double>(1.0, 0.0); };
  // int_A^inf dnu / nu^2 = 1 / A.
  CHECK(std::abs(lattice_tail(0.0, flat, 0.0, period, first) - 1.0 / a) < 1e-13 / a);
  // int_A^inf cos(w nu) / nu^2 against direct quadrature of a long window plus its own tail.
  const double w = 3.3;
  const QuadratureSpec spec;
  const double far = 4000.0 * period;
  const double head = integrate([&](double nu) { return std::cos(w * nu) / (nu * nu); }, a, far, spec,
                                1e-15, 4000);
  const double rest = lattice_tail(w, flat, 0.0, period, 4000).real();
  CHECK(lattice_tail(w, flat, 0.0, period, first).real() == doctest::Approx(head + rest).epsilon(1e-10));
}
