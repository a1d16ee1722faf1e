#include "parareal/num/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace parareal::num {

std::vector<double> Propagator::step_sizes(double span, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("propagate: step size must be positive");
  if (!(span > 0.0)) throw std::invalid_argument("propagate: need t1 > t0");
  // Relative slack so that span = k*dt up to rounding does not add a sliver step.
  auto n = static_cast<std::size_t>(std::ceil(span / dt - 1e-9));
  if (n == 0) n = 1;
  std::vector<double> steps(n, dt);
  steps.back() = span - static_cast<double>(n - 1) * dt;
  return steps;
}

Field Propagator::propagate(const Field& field, double t0, double t1) const {
  if (std::abs(field.tau - t0) > 1e-12 * std::max(1.0, std::abs(t0))) {
    throw std::invalid_argument("propagate: field.tau = " + std::to_string(field.tau) +
                                " does not match t0 = " + std::to_string(t0));
  }
  Field current = field;
  current.tau = t0;
  for (double dt : step_sizes(t1 - t0, step_size())) current = step(current, dt);
  current.tau = t1;
  return current;
}

}  // namespace parareal::num
