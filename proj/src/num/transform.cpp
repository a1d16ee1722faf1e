#include "parareal/num/transform.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parareal::num {

TransformConstants transform_constants(double rate, double sigma) {
  if (!(sigma > 0.0)) {
    throw std::invalid_argument("transform_constants: sigma must be positive");
  }
  TransformConstants c;
  c.kappa = 2.0 * rate / (sigma * sigma);
  c.alpha = 0.5 * (c.kappa - 1.0);
  c.beta = 0.5 * (c.kappa + 1.0);
  return c;
}

double payoff_transformed(double x, const TransformConstants& c) {
  return std::max(std::exp(c.beta * x) - std::exp(c.alpha * x), 0.0);
}

double boundary_value(BoundarySide side, double x, double tau, const TransformConstants& c) {
  if (side == BoundarySide::left) return 0.0;
  return std::exp(c.beta * x + c.beta * c.beta * tau) -
         std::exp(c.alpha * x + c.alpha * c.alpha * tau);
}

double invert_transform(double u, double x, double tau, double strike,
                        const TransformConstants& c) {
  return strike * std::exp(-c.alpha * x - c.beta * c.beta * tau) * u;
}

}  // namespace parareal::num
