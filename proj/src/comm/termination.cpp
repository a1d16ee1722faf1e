#include "parareal/comm/termination.hpp"

#include <cmath>

namespace parareal::comm {

double TerminationDetector::combine_norms(
    const std::vector<std::optional<ReportEntry>>& reports) {
  double sum = 0.0;
  for (const auto& entry : reports) {
    if (!entry) return std::numeric_limits<double>::infinity();
    sum += entry->report.local_norm * entry->report.local_norm;
  }
  return std::sqrt(sum);
}

ConvergenceState TerminationDetector::observe_epoch(const EpochSnapshot& snapshot) {
  state_.epoch = snapshot.epoch;
  state_.global_norm = combine_norms(snapshot.reports);
  if (state_.terminate) return state_;

  bool candidate = snapshot.total_sent == snapshot.total_consumed;
  for (const auto& entry : snapshot.reports) {
    if (!entry || !entry->report.local_converged || !entry->quiet) {
      candidate = false;
      break;
    }
  }

  if (!candidate) {
    armed_ = false;
  } else if (armed_ && snapshot.total_sent == sent_at_arm_) {
    state_.terminate = true;
  } else {
    armed_ = true;
    sent_at_arm_ = snapshot.total_sent;
  }
  return state_;
}

}  // namespace parareal::comm
