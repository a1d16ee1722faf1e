#include "parareal/num/problems.hpp"

#include "parareal/num/heat.hpp"

namespace parareal::num {

Problem make_black_scholes_problem(const TransformConstants& c, const SpatialGrid& grid,
                                   double coarse_dt, double fine_dt, Scheme scheme) {
  const auto bc = black_scholes_boundary(grid, c);
  return {
      "black-scholes",
      payoff_field(grid, c),
      std::make_shared<HeatPropagator>(grid, bc, coarse_dt, scheme),
      std::make_shared<HeatPropagator>(grid, bc, fine_dt, scheme),
  };
}

Problem make_exp_ode_problem(double a, double u0, double coarse_dt, double fine_dt,
                             OdeScheme coarse_scheme, OdeScheme fine_scheme) {
  return {
      "exp-ode",
      Field{{u0}, 0.0},
      std::make_shared<ExpOdePropagator>(a, coarse_dt, coarse_scheme),
      std::make_shared<ExpOdePropagator>(a, fine_dt, fine_scheme),
  };
}

}  // namespace parareal::num
