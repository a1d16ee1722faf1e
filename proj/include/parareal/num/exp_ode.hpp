#pragma once

#include "parareal/num/propagator.hpp"

namespace parareal::num {

/// lambda * e^{a (t1 - t0)}: exact flow of du/dt = a u.
double exact_exp_propagator(double a, double lambda, double t0, double t1);

enum class OdeScheme { exact, backward_euler };

/// Propagator for du/dt = a u on every component of a Field.
class ExpOdePropagator final : public Propagator {
 public:
  ExpOdePropagator(double a, double dt, OdeScheme scheme);

  double step_size() const override { return dt_; }
  Field step(const Field& field, double dt) const override;

 private:
  double a_;
  double dt_;
  OdeScheme scheme_;
};

}  // namespace parareal::num
