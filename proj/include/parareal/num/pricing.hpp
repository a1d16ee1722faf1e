#pragma once

namespace parareal::num {

struct MarketParams {
  double spot = 0.0;
  double strike = 0.0;
  double rate = 0.0;
  double sigma = 0.0;
  double maturity = 0.0;

  /// Throws std::invalid_argument unless spot, strike, sigma, maturity > 0.
  void validate() const;
};

/// Standard normal CDF via erfc.
double normal_cdf(double x);

/// European call, S N(d1) - E e^{-rT} N(d2).
double closed_form_price(const MarketParams& m);

}  // namespace parareal::num
