#pragma once

#include <functional>
#include <stdexcept>

#include "parareal/num/grid.hpp"
#include "parareal/num/propagator.hpp"
#include "parareal/num/transform.hpp"

namespace parareal::num {

/// Time-dependent Dirichlet data at the two grid endpoints.
struct DirichletBoundary {
  std::function<double(double tau)> left;
  std::function<double(double tau)> right;
};

DirichletBoundary black_scholes_boundary(const SpatialGrid& grid, const TransformConstants& c);

/// Boundary values of the exact mode u = e^{k x + k^2 tau}.
DirichletBoundary exponential_mode_boundary(const SpatialGrid& grid, double k);

/// Nodal values of e^{k x + k^2 tau}.
Field exponential_mode(const SpatialGrid& grid, double k, double tau);

/// Transformed payoff sampled on the grid at tau = 0.
Field payoff_field(const SpatialGrid& grid, const TransformConstants& c);

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One theta-step of u_tau = u_xx with centred second differences:
///   (I - theta dt D2) u_new = (I + (1 - theta) dt D2) u_old,
/// theta = 1 (backward Euler) or 1/2 (Crank-Nicolson); boundary rows take
/// the Dirichlet data at tau + dt. Throws NumericalError on non-finite output.
Field step_heat(const Field& field, const SpatialGrid& grid, const DirichletBoundary& bc,
                double dt, Scheme scheme);

class HeatPropagator final : public Propagator {
 public:
  HeatPropagator(SpatialGrid grid, DirichletBoundary bc, double dt, Scheme scheme);

  double step_size() const override { return dt_; }
  Field step(const Field& field, double dt) const override;

  const SpatialGrid& grid() const { return grid_; }
  Scheme scheme() const { return scheme_; }

 private:
  SpatialGrid grid_;
  DirichletBoundary bc_;
  double dt_;
  Scheme scheme_;
};

}  // namespace parareal::num
