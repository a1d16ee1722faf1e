#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "parareal/num/pricing.hpp"

using namespace parareal::num;

TEST_CASE("normal cdf reference values") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-12));
  CHECK(normal_cdf(-1.0) == doctest::Approx(0.15865525393145707).epsilon(1e-12));
  CHECK(normal_cdf(8.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("deep in the money, short maturity tends to S - E e^{-rT}") {
  const MarketParams m{200.0, 80.0, 0.03, 0.2, 1e-3};
  CHECK(closed_form_price(m) ==
        doctest::Approx(200.0 - 80.0 * std::exp(-0.03 * 1e-3)).epsilon(1e-12));
}

TEST_CASE("at-the-forward strike reduces to S (2 N(sigma sqrt(T) / 2) - 1)") {
  const double E = 100.0;
  const double r = 0.05;
  const double T = 2.0;
  const double sigma = 0.3;
  const double S = E * std::exp(-r * T);
  const double expected = S * (2.0 * normal_cdf(0.5 * sigma * std::sqrt(T)) - 1.0);
  CHECK(closed_form_price({S, E, r, sigma, T}) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("price monotonicity and lower bound on a lattice") {
  const double r = 0.03;
  for (double sigma : {0.1, 0.2, 0.4}) {
    for (double T : {0.1, 1.0, 5.0}) {
      double prev_s = -1.0;
      for (double S = 50.0; S <= 150.0; S += 5.0) {
        const double p = closed_form_price({S, 80.0, r, sigma, T});
        REQUIRE(p >= prev_s);
        REQUIRE(p >= std::max(S - 80.0 * std::exp(-r * T), 0.0) - 1e-10);
        prev_s = p;
      }
      double prev_e = 1e300;
      for (double E = 50.0; E <= 150.0; E += 5.0) {
        const double p = closed_form_price({100.0, E, r, sigma, T});
        REQUIRE(p <= prev_e);
        prev_e = p;
      }
    }
  }
}

TEST_CASE("market parameter validation") {
  CHECK_THROWS_AS(closed_form_price({0.0, 80.0, 0.03, 0.2, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_price({100.0, 80.0, 0.03, 0.2, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_price({100.0, 80.0, 0.03, -0.2, 1.0}), std::invalid_argument);
}
