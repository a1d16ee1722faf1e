#pragma once

#include <chrono>
#include <functional>

#include "parareal/comm/graph.hpp"
#include "parareal/comm/trace.hpp"
#include "parareal/num/problems.hpp"

namespace parareal {

enum class Mode { sync, async };

/// Called by a worker right before it hands a payload to the communicator.
/// Used by test harnesses to inject message latency; invoked concurrently
/// from different workers, never concurrently for the same rank.
using SendHook = std::function<void(comm::WorkerId rank, long iteration)>;

struct PararealConfig {
  int n_workers = 1;
  /// Slab length; slab n covers [n * coarse_step, (n + 1) * coarse_step].
  double coarse_step = 0.0;
  /// Must equal problem.fine->step_size().
  double fine_step = 0.0;
  double res_thresh = 1e-6;
  /// 0 selects the default of 50 * n_workers. In async mode only iterations
  /// that adopt new data or change the solution count against it.
  long max_iter = 0;
  Mode mode = Mode::sync;
  num::Problem problem;

  /// Async only: reuse G(lambda0) when no new lambda0 arrived.
  bool cache_coarse = false;
  /// Async only: pause after an iteration that neither adopted data nor
  /// changed the solution.
  std::chrono::microseconds idle_backoff{200};
  SendHook before_send;

  std::chrono::milliseconds watchdog{60'000};
  comm::TraceLog* trace = nullptr;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
  long effective_max_iter() const { return max_iter > 0 ? max_iter : 50L * n_workers; }
  double slab_start(int rank) const { return rank * coarse_step; }
  double slab_end(int rank) const { return (rank + 1) * coarse_step; }
};

}  // namespace parareal
