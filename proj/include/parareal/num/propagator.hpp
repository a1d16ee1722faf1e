#pragma once

#include <vector>

#include "parareal/field.hpp"

namespace parareal::num {

enum class Scheme { backward_euler, crank_nicolson };

/// A time integrator advancing a Field across [t0, t1] with internal step
/// step_size(). Implementations are immutable and safe to share between
/// workers.
class Propagator {
 public:
  virtual ~Propagator() = default;

  virtual double step_size() const = 0;

  /// One step of length dt starting from field.tau; the result carries
  /// tau + dt.
  virtual Field step(const Field& field, double dt) const = 0;

  /// ceil((t1 - t0) / step_size()) steps, the last one shortened so the
  /// steps sum to t1 - t0. The result's tau is exactly t1.
  Field propagate(const Field& field, double t0, double t1) const;

  /// Step lengths used by propagate for a span, exposed for testing.
  static std::vector<double> step_sizes(double span, double dt);
};

}  // namespace parareal::num
