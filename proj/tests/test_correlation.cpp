#include <doctest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "spdc/correlation.hpp"
#include "spdc/specfun.hpp"

using namespace spdc;

namespace {

const TimingParams kTiming{70.0, 130000.0};
const QuadratureSpec kSpec{};

double rate(double delay, const std::optional<PhaseFilter>& f, RateMethod m) {
  return coincidence_rate(delay, kTiming, f, kSpec, m).rate;
}

}  // namespace

TEST_CASE("method names") {
  for (auto m : {RateMethod::direct, RateMethod::series, RateMethod::closed_form}) {
    CHECK(parse_rate_method(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_rate_method("simpson"), ConfigError);
}

TEST_CASE("triangle") {
  CHECK(triangle(0.0) == 1.0);
  CHECK(triangle(0.25) == 0.75);
  CHECK(triangle(-0.25) == 0.75);
  CHECK(triangle(1.0) == 0.0);
  CHECK(triangle(-1.0) == 0.0);
  CHECK_FALSE(std::signbit(triangle(1.0 + 1e-16)));
  CHECK(triangle(5.0) == 0.0);
}

TEST_CASE("integrands") {
  const auto filter = PhaseFilter::from_gamma(4.0, 50.0);
  const auto off = PhaseFilter::from_gamma(0.0, 50.0);
  CHECK(modulated_integrand_direct(0.0, 30.0, 70.0, filter) == 0.0);
  CHECK(unmodulated_integrand(0.0, 30.0, 70.0) == 0.0);
  for (double nu : {-0.1, 0.003, 0.02, 0.37}) {
    CAPTURE(nu);
    CHECK(modulated_integrand_direct(nu, 30.0, 70.0, off) ==
          doctest::Approx(2.0 * unmodulated_integrand(nu, 30.0, 70.0)).epsilon(1e-14));
    CHECK(modulated_integrand_series(nu, 30.0, 70.0, off, 5) ==
          doctest::Approx(unmodulated_integrand(nu, 30.0, 70.0)).epsilon(1e-14));
  }

  // Phase condition 2 nu T - gamma sin(beta nu) = pi at tau1 nu = pi / 2.
  const double nu = kPi / 140.0;
  const double delay = (kPi + 4.0 * std::sin(50.0 * nu)) / (2.0 * nu);
  CHECK(modulated_integrand_direct(nu, delay, 70.0, filter) ==
        doctest::Approx(4.0 * (2.0 / kPi) * (2.0 / kPi)).epsilon(1e-13));

  // Series is half the direct integrand pointwise.
  const int n_max = default_series_order(4.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double v = -1.0 + 2.0 * i / 999.0;
    worst = std::max(worst, std::abs(modulated_integrand_series(v, 37.0, 70.0, filter, n_max) -
                                     0.5 * modulated_integrand_direct(v, 37.0, 70.0, filter)));
  }
  CHECK(worst < 1e-9);

  // At T = 0 only the even orders survive.
  const auto j = bessel_j_table(n_max, 4.0);
  for (double v : {0.01, 0.05, 0.3}) {
    double bracket = 1.0 - j[0];
    for (int n = 2; n <= n_max; n += 2) bracket -= 2.0 * j[n] * std::cos(n * 50.0 * v);
    CHECK(modulated_integrand_series(v, 0.0, 70.0, filter, n_max) ==
          doctest::Approx(sinc(70.0 * v) * sinc(70.0 * v) * bracket).epsilon(1e-13));
  }
}

TEST_CASE("unmodulated rate") {
  for (auto m : {RateMethod::direct, RateMethod::closed_form}) {
    CHECK(std::abs(rate(0.0, std::nullopt, m)) < 1e-6);
    CHECK(rate(70.0, std::nullopt, m) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(rate(35.0, std::nullopt, m) == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(rate(-100.0, std::nullopt, m) == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK(coincidence_rate_closed_form(0.0, kTiming, std::nullopt).rate == 0.0);
  CHECK(coincidence_rate_closed_form(35.0, kTiming, std::nullopt).rate == 0.5);
  for (double t : {3.0, 21.0, 55.5, 69.0, 90.0}) {
    CAPTURE(t);
    CHECK(rate(t, std::nullopt, RateMethod::direct) ==
          doctest::Approx(rate(-t, std::nullopt, RateMethod::direct)).epsilon(1e-9));
    CHECK(coincidence_rate_closed_form(t, kTiming, std::nullopt).rate ==
          coincidence_rate_closed_form(-t, kTiming, std::nullopt).rate);
  }
}

TEST_CASE("closed form at zero delay, gamma 4") {
  const auto filter = PhaseFilter::from_gamma(4.0, 50.0);
  const double expected = 1.1890765836626629127;  // 1 - J0(4) - (4/7) J2(4)
  CHECK(coincidence_rate_closed_form(0.0, kTiming, filter).rate ==
        doctest::Approx(expected).epsilon(1e-13));
  CHECK(rate(0.0, filter, RateMethod::direct) == doctest::Approx(expected).epsilon(1e-10));
  CHECK(rate(0.0, filter, RateMethod::series) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("closed form saturates outside all triangles") {
  for (double gamma : {0.3, 4.0, 7.0}) {
    const auto filter = PhaseFilter::from_gamma(gamma, 50.0);
    const ClosedFormRate closed(kTiming, filter);
    const double edge = 70.0 + closed.order() * 50.0;
    CHECK(closed(edge + 1.0) == 1.0);
    CHECK(closed(-edge - 1.0) == 1.0);
    CHECK(closed.shift_per_order() == 25.0);
  }
}

TEST_CASE("three methods agree on random tuples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double ds = 0.0;
  double dc = 0.0;
  for (int i = 0; i < 25; ++i) {
    const double gamma = 8.0 * u(rng);
    const double beta = 70.0 * (0.2 + 1.8 * u(rng));
    const double delay = (280.0 + 8.0 * beta) * (2.0 * u(rng) - 1.0);
    const auto filter = PhaseFilter::from_gamma(gamma, beta);
    const double d = rate(delay, filter, RateMethod::direct);
    const double s = rate(delay, filter, RateMethod::series);
    const double c = rate(delay, filter, RateMethod::closed_form);
    CHECK(d >= 0.0);
    ds = std::max(ds, std::abs(d - s));
    dc = std::max(dc, std::abs(d - c));
  }
  CHECK(ds < 1e-9);
  CHECK(dc < 1e-9);
}

TEST_CASE("unit-scale invariance") {
  const auto f1 = PhaseFilter::from_gamma(5.0, 40.0);
  for (double k : {0.1, 3.0}) {
    const TimingParams scaled{70.0 * k, 130000.0 * k};
    const auto fk = PhaseFilter::from_gamma(5.0, 40.0 * k);
    for (double delay : {-60.0, 12.0, 95.0}) {
      const double a = rate(delay, f1, RateMethod::direct);
      const double b = coincidence_rate(delay * k, scaled, fk, kSpec, RateMethod::direct).rate;
      CHECK(a == doctest::Approx(b).epsilon(1e-9));
      CHECK(coincidence_rate_closed_form(delay, kTiming, f1).rate ==
            doctest::Approx(coincidence_rate_closed_form(delay * k, scaled, fk).rate).epsilon(1e-13));
    }
  }
}

TEST_CASE("negative rates from noise are clamped with a warning") {
  std::vector<std::string> warnings;
  set_warning_handler([&](std::string_view w) { warnings.emplace_back(w); });
  QuadratureSpec loose;
  loose.rel_tol = 1e-3;
  for (double delay : {0.0, 1e-9, -1e-9}) {
    const double r = coincidence_rate(delay, kTiming, std::nullopt, loose, RateMethod::direct).rate;
    CHECK(r >= 0.0);
    CHECK(r < 1e-6);
  }
  set_warning_handler({});
  CHECK(coincidence_rate(0.0, kTiming, std::nullopt, kSpec, RateMethod::direct).rate >= 0.0);
}

TEST_CASE("explicit series order") {
  const auto filter = PhaseFilter::from_gamma(4.0, 50.0);
  const double full = coincidence_rate_closed_form(20.0, kTiming, filter).rate;
  const double cut = coincidence_rate_closed_form(20.0, kTiming, filter, 2).rate;
  CHECK(std::abs(full - cut) > 1e-3);
  CHECK(ClosedFormRate(kTiming, filter, 2).order() == 2);
  CHECK(ClosedFormRate(kTiming, std::nullopt).order() == 0);
}
