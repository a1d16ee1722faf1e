#include "parareal/solver/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace parareal {

void PararealConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("PararealConfig: " + msg); };
  if (n_workers < 1) fail("n_workers must be >= 1");
  if (!(coarse_step > 0.0)) fail("coarse_step must be positive");
  if (!(fine_step > 0.0)) fail("fine_step must be positive");
  if (fine_step > coarse_step) fail("fine_step must not exceed coarse_step");
  if (!(res_thresh > 0.0)) fail("res_thresh must be positive");
  if (max_iter < 0) fail("max_iter must be >= 0");
  if (mode == Mode::sync && max_iter > 0 && max_iter < n_workers) {
    fail("max_iter must be >= n_workers in sync mode");
  }
  if (!problem.coarse || !problem.fine) fail("problem needs both propagators");
  if (problem.fine->step_size() != fine_step) fail("fine_step does not match the fine propagator");
  if (problem.u0.size() == 0) fail("problem.u0 is empty");
  if (problem.u0.tau != 0.0) fail("problem.u0 must sit at tau = 0");
}

}  // namespace parareal
