#include <doctest.h>

#include <cmath>

#include "spdc/params.hpp"
#include "spdc/specfun.hpp"

using namespace spdc;

namespace {

struct Reference {
  double x;
  int n;
  double value;
};

// 20-digit values from an arbitrary-precision library.
const Reference kReference[] = {
    {0.5, 0, 0.93846980724081290423},    {0.5, 1, 0.24226845767487388638},
    {0.5, 2, 0.030604023458682641307},   {0.5, 5, 8.053627241357474086e-6},
    {0.5, 10, 2.6131773608228030862e-13},
    {4.0, 0, -0.39714980986384737229},   {4.0, 1, -0.066043328023549136143},
    {4.0, 2, 0.36412814585207280421},    {4.0, 5, 0.13208665604709827229},
    {4.0, 10, 0.0001950405546600345098}, {4.0, 30, 3.5570357020361046534e-24},
    {7.0, 0, 0.30007927051955559665},    {7.0, 1, -0.0046828234823458326991},
    {7.0, 2, -0.30141722008594012028},   {7.0, 5, 0.34789632475118328514},
    {7.0, 10, 0.023539344388267134807},  {7.0, 30, 5.3172607940100176824e-17},
    {20.0, 0, 0.16702466434058315473},   {20.0, 1, 0.066833124175850045579},
    {20.0, 2, -0.16034135192299815017},  {20.0, 5, 0.15116976798239497461},
    {20.0, 10, 0.18648255802394508321},  {20.0, 30, 0.00012401536360354327865},
    {100.0, 0, 0.019985850304223122424}, {100.0, 1, -0.077145352014112158033},
    {100.0, 2, -0.021528757344505365585}, {100.0, 5, -0.074195736964513920834},
    {100.0, 10, -0.054732176935472014742}, {100.0, 30, 0.081460129581172222968},
    {1000.0, 0, 0.024786686152420174561}, {1000.0, 1, 0.0047283119070895239176},
    {1000.0, 2, -0.024777229528605995513}, {1000.0, 5, 0.0050254069452331860742},
    {1000.0, 10, -0.024520622306036558192}, {1000.0, 30, -0.020271896981075845238},
    {-3.5, 0, -0.38012773998726337738},  {-3.5, 1, -0.13737752736232718572},
    {-3.5, 2, 0.4586291841943074835},    {-3.5, 5, -0.080441986647991781805},
    {-3.5, 10, 0.000056009495875078835566}, {-3.5, 30, 6.6759150420185975812e-26},
};

}  // namespace

TEST_CASE("sinc") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(kPi) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(sinc(1e-6) == doctest::Approx(1.0 - 1e-12 / 6.0).epsilon(1e-16));
  CHECK(sinc(2.0) == doctest::Approx(std::sin(2.0) / 2.0).epsilon(1e-15));
  CHECK(sinc(-2.0) == sinc(2.0));
}

TEST_CASE("Bessel table against reference values") {
  for (const auto& r : kReference) {
    CAPTURE(r.x);
    CAPTURE(r.n);
    const auto table = bessel_j_table(30, r.x);
    CHECK(std::abs(table[r.n] - r.value) <= 1e-13 + 1e-12 * std::abs(r.value));
  }
}

TEST_CASE("Bessel zeros") {
  CHECK(std::abs(bessel_j_table(0, 2.4048255576957727686)[0]) < 1e-15);
  CHECK(std::abs(bessel_j_table(1, 3.8317059702075123156)[1]) < 1e-15);
}

TEST_CASE("Bessel special arguments and errors") {
  const auto zero = bessel_j_table(5, 0.0);
  CHECK(zero[0] == 1.0);
  for (int n = 1; n <= 5; ++n) CHECK(zero[n] == 0.0);
  CHECK(bessel_j_table(0, 4.0).values.size() == 1);
  CHECK_THROWS_AS(bessel_j_table(-1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bessel_j_table(3, std::nan("")), std::invalid_argument);
}

TEST_CASE("sum rule and three-term recurrence") {
  for (double x : {0.5, 1.0, 2.0, 4.0, 7.0, 10.0, 20.0}) {
    CAPTURE(x);
    const auto j = bessel_j_table(series_truncation_order(x, 1e-16) + 10, x);
    double sum = j[0] * j[0];
    for (int n = 1; n <= j.order_max; ++n) sum += 2.0 * j[n] * j[n];
    CHECK(std::abs(sum - 1.0) < 1e-10);
    for (int n = 1; n < j.order_max; ++n) {
      CHECK(std::abs(j[n - 1] + j[n + 1] - 2.0 * n / x * j[n]) < 1e-12);
    }
  }
}

TEST_CASE("Jacobi-Anger expansion on a 1000-point grid") {
  double worst = 0.0;
  for (int ix = 0; ix < 40; ++ix) {
    const double x = 0.25 + 0.5 * ix;
    const auto j = bessel_j_table(series_truncation_order(x, 1e-15) + 5, x);
    for (int it = 0; it < 25; ++it) {
      const double theta = -kPi + 2.0 * kPi * (it + 0.37) / 25.0;
      double c = j[0];
      double s = 0.0;
      for (int n = 1; n <= j.order_max; ++n) {
        (n % 2 == 0 ? c : s) += 2.0 * j[n] * (n % 2 == 0 ? std::cos(n * theta) : std::sin(n * theta));
      }
      worst = std::max(worst, std::abs(c - std::cos(x * std::sin(theta))));
      worst = std::max(worst, std::abs(s - std::sin(x * std::sin(theta))));
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("series truncation order") {
  CHECK(series_truncation_order(0.0, 1e-10) == 1);
  for (double gamma : {0.5, 4.0, 7.0, 20.0}) {
    for (double eps : {1e-6, 1e-10, 1e-13}) {
      CAPTURE(gamma);
      CAPTURE(eps);
      const int n = series_truncation_order(gamma, eps);
      const auto j = bessel_j_table(n + 40, gamma);
      double tail = 0.0;
      for (int k = n; k <= j.order_max; ++k) tail += std::abs(j[k]);
      CHECK(tail < eps);
      CHECK(std::abs(j[n]) < eps);
      // One order fewer would not meet the eps / 10 target.
      double longer = 0.0;
      for (int k = n - 1; k <= j.order_max; ++k) longer += std::abs(j[k]);
      CHECK(longer >= eps / 10.0);
    }
  }
  CHECK(series_truncation_order(7.0, 1e-10) > 7);
  CHECK(std::abs(bessel_j_table(40, 7.0)[series_truncation_order(7.0, 1e-11)]) < 1e-11);
  CHECK_THROWS_AS(series_truncation_order(1.0, 0.0), std::invalid_argument);
}
