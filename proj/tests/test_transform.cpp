#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "parareal/num/transform.hpp"

using namespace parareal::num;

TEST_CASE("transform constants") {
  const auto c = transform_constants(0.03, 0.2);
  CHECK(c.kappa == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(c.alpha == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(c.beta == doctest::Approx(1.25).epsilon(1e-15));

  const auto sym = transform_constants(0.02, 0.2);
  CHECK(sym.kappa == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sym.alpha == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(sym.beta == doctest::Approx(1.0).epsilon(1e-15));

  const auto zero = transform_constants(0.0, 0.35);
  CHECK(zero.kappa == 0.0);
  CHECK(zero.alpha == -0.5);
  CHECK(zero.beta == 0.5);

  CHECK_THROWS_AS(transform_constants(0.03, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(transform_constants(0.03, -0.1), std::invalid_argument);
}

TEST_CASE("beta - alpha = 1 across a parameter lattice") {
  for (double r = -0.05; r <= 0.2; r += 0.0125) {
    for (double sigma = 0.05; sigma <= 1.0; sigma += 0.05) {
      const auto c = transform_constants(r, sigma);
      REQUIRE(c.beta - c.alpha == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("transformed payoff") {
  const auto c = transform_constants(0.03, 0.2);
  CHECK(payoff_transformed(0.0, c) == 0.0);
  CHECK(payoff_transformed(-1.0, c) == 0.0);
  // e^{1.25} - e^{0.25}, evaluated independently.
  CHECK(payoff_transformed(1.0, c) == doctest::Approx(2.2063175407741).epsilon(1e-13));
}

TEST_CASE("boundary values") {
  const auto c = transform_constants(0.03, 0.2);
  CHECK(boundary_value(BoundarySide::left, -6.0, 0.0, c) == 0.0);
  CHECK(boundary_value(BoundarySide::left, -6.0, 0.37, c) == 0.0);
  for (double x : {0.5, 2.0, 6.0}) {
    CHECK(boundary_value(BoundarySide::right, x, 0.0, c) ==
          doctest::Approx(payoff_transformed(x, c)).epsilon(1e-14));
  }
  // e^{2.5 + 0.15625} - e^{0.5 + 0.00625}
  CHECK(boundary_value(BoundarySide::right, 2.0, 0.1, c) ==
        doctest::Approx(12.5837203623861).epsilon(1e-13));
}

TEST_CASE("inverse transform recovers the call payoff at tau = 0") {
  const auto c = transform_constants(0.03, 0.2);
  const double E = 80.0;
  for (double ratio = 0.1; ratio <= 10.0; ratio *= 1.07) {
    const double S = E * ratio;
    const double x = std::log(ratio);
    const double V = invert_transform(payoff_transformed(x, c), x, 0.0, E, c);
    const double expected = std::max(S - E, 0.0);
    if (expected == 0.0) {
      REQUIRE(V == 0.0);
    } else {
      REQUIRE(std::abs(V - expected) <= 1e-12 * expected);
    }
  }
  CHECK(invert_transform(0.0, 0.3, 0.1, E, c) == 0.0);
}
