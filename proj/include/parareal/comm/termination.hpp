#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "parareal/comm/graph.hpp"

namespace parareal::comm {

/// One worker's view of its latest local iteration.
struct ResidualReport {
  WorkerId rank = 0;
  double local_norm = 0.0;
  bool local_converged = false;
  long iteration = 0;
};

/// What a worker learns back from the detector. global_norm is +inf until
/// every rank has reported at least once.
struct ConvergenceState {
  double global_norm = std::numeric_limits<double>::infinity();
  bool terminate = false;
  long epoch = 0;
};

/// A report as seen by the coordinator at epoch close. `quiet` is false when
/// the reporting worker consumed a message after (or during the iteration
/// that produced) the report, i.e. its state may have moved since.
struct ReportEntry {
  ResidualReport report;
  bool quiet = true;
};

struct EpochSnapshot {
  long epoch = 0;
  std::vector<std::optional<ReportEntry>> reports;  // indexed by rank
  std::uint64_t total_sent = 0;
  std::uint64_t total_consumed = 0;
};

/// Two-phase termination detection.
///
/// An epoch is a *candidate* when every rank has a report, every report is
/// converged and quiet, and no data message is in flight (sent == consumed).
/// Termination is declared at the second of two consecutive candidate epochs
/// between which the global send counter did not move. Any non-candidate
/// epoch, or a send between the two, restarts the confirmation.
class TerminationDetector {
 public:
  ConvergenceState observe_epoch(const EpochSnapshot& snapshot);
  const ConvergenceState& state() const { return state_; }
  bool armed() const { return armed_; }

  /// Euclidean combination of local norms, summed in rank order; +inf if a
  /// rank has not reported yet.
  static double combine_norms(const std::vector<std::optional<ReportEntry>>& reports);

 private:
  ConvergenceState state_;
  bool armed_ = false;
  std::uint64_t sent_at_arm_ = 0;
};

}  // namespace parareal::comm
