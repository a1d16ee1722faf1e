#pragma once

#include <memory>
#include <string>

#include "parareal/field.hpp"
#include "parareal/num/exp_ode.hpp"
#include "parareal/num/grid.hpp"
#include "parareal/num/propagator.hpp"
#include "parareal/num/transform.hpp"

namespace parareal::num {

/// Initial value plus the coarse/fine propagator pair a parareal run needs.
struct Problem {
  std::string name;
  Field u0;
  std::shared_ptr<const Propagator> coarse;
  std::shared_ptr<const Propagator> fine;
};

/// Transformed call on `grid`; both propagators share the grid and differ
/// only in their time step.
Problem make_black_scholes_problem(const TransformConstants& c, const SpatialGrid& grid,
                                   double coarse_dt, double fine_dt,
                                   Scheme scheme = Scheme::backward_euler);

/// Scalar du/dt = a u, u(0) = u0.
Problem make_exp_ode_problem(double a, double u0, double coarse_dt, double fine_dt,
                             OdeScheme coarse_scheme = OdeScheme::exact,
                             OdeScheme fine_scheme = OdeScheme::exact);

}  // namespace parareal::num
