#include "parareal/num/pricing.hpp"

#include <cmath>
#include <stdexcept>

namespace parareal::num {

void MarketParams::validate() const {
  if (!(spot > 0.0)) throw std::invalid_argument("MarketParams: spot must be positive");
  if (!(strike > 0.0)) throw std::invalid_argument("MarketParams: strike must be positive");
  if (!(sigma > 0.0)) throw std::invalid_argument("MarketParams: sigma must be positive");
  if (!(maturity > 0.0)) throw std::invalid_argument("MarketParams: maturity must be positive");
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double closed_form_price(const MarketParams& m) {
  m.validate();
  const double vol_sqrt_t = m.sigma * std::sqrt(m.maturity);
  const double d1 =
      (std::log(m.spot / m.strike) + (m.rate + 0.5 * m.sigma * m.sigma) * m.maturity) /
      vol_sqrt_t;
  const double d2 = d1 - vol_sqrt_t;
  return m.spot * normal_cdf(d1) - m.strike * std::exp(-m.rate * m.maturity) * normal_cdf(d2);
}

}  // namespace parareal::num
