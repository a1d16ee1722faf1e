#include "parareal/num/exp_ode.hpp"

#include <cmath>
#include <stdexcept>

namespace parareal::num {

double exact_exp_propagator(double a, double lambda, double t0, double t1) {
  if (t1 < t0) throw std::invalid_argument("exact_exp_propagator: need t1 >= t0");
  return lambda * std::exp(a * (t1 - t0));
}

ExpOdePropagator::ExpOdePropagator(double a, double dt, OdeScheme scheme)
    : a_(a), dt_(dt), scheme_(scheme) {
  if (!(dt > 0.0)) throw std::invalid_argument("ExpOdePropagator: dt must be positive");
}

Field ExpOdePropagator::step(const Field& field, double dt) const {
  const double factor = scheme_ == OdeScheme::exact ? std::exp(a_ * dt) : 1.0 / (1.0 - a_ * dt);
  Field out = field;
  for (double& v : out.values) v *= factor;
  out.tau = field.tau + dt;
  return out;
}

}  // namespace parareal::num
