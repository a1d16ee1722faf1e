#include "parareal/num/heat.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "parareal/num/tridiagonal.hpp"

namespace parareal::num {

DirichletBoundary black_scholes_boundary(const SpatialGrid& grid, const TransformConstants& c) {
  const double xl = grid.x_min();
  const double xr = grid.x_max();
  return {
      [xl, c](double tau) { return boundary_value(BoundarySide::left, xl, tau, c); },
      [xr, c](double tau) { return boundary_value(BoundarySide::right, xr, tau, c); },
  };
}

DirichletBoundary exponential_mode_boundary(const SpatialGrid& grid, double k) {
  const double xl = grid.x_min();
  const double xr = grid.x_max();
  return {
      [xl, k](double tau) { return std::exp(k * xl + k * k * tau); },
      [xr, k](double tau) { return std::exp(k * xr + k * k * tau); },
  };
}

Field exponential_mode(const SpatialGrid& grid, double k, double tau) {
  std::vector<double> v(grid.n_points());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(k * grid.x(i) + k * k * tau);
  return {std::move(v), tau};
}

Field payoff_field(const SpatialGrid& grid, const TransformConstants& c) {
  std::vector<double> v(grid.n_points());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = payoff_transformed(grid.x(i), c);
  return {std::move(v), 0.0};
}

Field step_heat(const Field& field, const SpatialGrid& grid, const DirichletBoundary& bc,
                double dt, Scheme scheme) {
  if (!(dt > 0.0)) throw std::invalid_argument("step_heat: dt must be positive");
  const std::size_t n = grid.n_points();
  if (field.size() != n) throw std::invalid_argument("step_heat: field does not match grid");

  const double theta = scheme == Scheme::backward_euler ? 1.0 : 0.5;
  const double lambda = dt / (grid.h() * grid.h());
  const double tau_new = field.tau + dt;
  const auto& u = field.values;

  std::vector<double> sub(n, 0.0), diag(n, 1.0), sup(n, 0.0), rhs(n);
  rhs.front() = bc.left(tau_new);
  rhs.back() = bc.right(tau_new);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    sub[i] = sup[i] = -theta * lambda;
    diag[i] = 1.0 + 2.0 * theta * lambda;
    rhs[i] = u[i];
    if (theta != 1.0) rhs[i] += (1.0 - theta) * lambda * (u[i - 1] - 2.0 * u[i] + u[i + 1]);
  }

  Field out{solve_tridiagonal(sub, diag, sup, rhs), tau_new};
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(out.values[i])) {
      throw NumericalError("step_heat: non-finite value at node " + std::to_string(i) +
                           " (x = " + std::to_string(grid.x(i)) +
                           ", tau = " + std::to_string(tau_new) + ")");
    }
  }
  return out;
}

HeatPropagator::HeatPropagator(SpatialGrid grid, DirichletBoundary bc, double dt, Scheme scheme)
    : grid_(grid), bc_(std::move(bc)), dt_(dt), scheme_(scheme) {
  if (!(dt > 0.0)) throw std::invalid_argument("HeatPropagator: dt must be positive");
  if (!bc_.left || !bc_.right) {
    throw std::invalid_argument("HeatPropagator: both boundary functions are required");
  }
}

Field HeatPropagator::step(const Field& field, double dt) const {
  return step_heat(field, grid_, bc_, dt, scheme_);
}

}  // namespace parareal::num
