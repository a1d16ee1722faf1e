#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "parareal/experiment/spec.hpp"
#include "parareal/experiment/table.hpp"

namespace parareal::experiment {

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kMaturityLow = 1e-4;
inline constexpr double kMaturityHigh = 100.0;

/// Bisection on [1e-4, 100] years for the maturity at which the closed-form
/// call price equals target_Ve, to |price - target| <= 1e-6. market.maturity
/// is ignored. Throws CalibrationError when the bracket has no sign change.
double calibrate_maturity(const num::MarketParams& market, double target_Ve);

/// Runs every sweep row in order. A row whose solve fails is recorded with
/// converged = false and the sweep carries on. Progress goes to `log` if set.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, std::ostream* log = nullptr);

}  // namespace parareal::experiment
