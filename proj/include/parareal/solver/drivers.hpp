#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "parareal/solver/config.hpp"

namespace parareal {

struct IterationRecord {
  comm::WorkerId rank = 0;
  long k = 0;
  double local_residual = 0.0;
  std::optional<double> global_residual;  // unknown before the first epoch
  double wall_time = 0.0;                 // seconds since the driver started
  long adopted_tag = -1;                  // sender tag of a newly adopted lambda0, or -1
};

/// Slab-end values, endpoints[n] at time (n + 1) * coarse_step.
struct Solution {
  std::vector<Field> endpoints;
};

struct RunResult {
  Solution solution;
  std::vector<IterationRecord> records;  // grouped by rank, in iteration order
  std::vector<long> iterations;          // per-worker loop passes
  double wall_time = 0.0;                // includes spawn and the initial coarse sweep
};

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> history_;
};

/// Classical parareal: blocking receive and a collective residual per round;
/// worker n stops correcting after n rounds and finishes with one fine solve.
RunResult run_sync(const PararealConfig& config);

/// Asynchronous parareal: polling receive, no collective waits; stops when
/// the termination coordinator declares global convergence.
RunResult run_async(const PararealConfig& config);

/// Dispatches on config.mode.
RunResult run(const PararealConfig& config);

/// F applied slab after slab from u0: the value parareal converges to.
Solution sequential_fine_reference(const PararealConfig& config);

/// Seeded uniform per-message latency in [0, max_ms] milliseconds, one
/// independent stream per rank.
SendHook make_uniform_delay(unsigned seed, double max_ms, int n_workers);

}  // namespace parareal
