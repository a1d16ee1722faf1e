#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "parareal/comm/graph.hpp"
#include "parareal/comm/termination.hpp"
#include "parareal/comm/trace.hpp"
#include "parareal/field.hpp"

namespace parareal::comm {

class CommError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A collective or blocking receive waited longer than the watchdog allows.
class WatchdogTimeout : public CommError {
 public:
  using CommError::CommError;
};

/// Another participant aborted the run; blocked calls unwind with this.
class CommAborted : public CommError {
 public:
  using CommError::CommError;
};

/// Misuse of the messaging contract (receive without a predecessor, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Message {
  WorkerId sender = 0;
  long sender_iteration = 0;
  Field payload;
};

/// Outcome of a receive. Exactly one of: a message, `source_closed`, or
/// (poll only) nothing new.
struct Received {
  std::optional<Message> message;
  bool source_closed = false;
};

struct CommOptions {
  /// Threshold behind ResidualReport::local_converged; reports that disagree
  /// with it are rejected.
  double res_thresh = 1e-6;
  /// Expected payload length; 0 disables the check.
  std::size_t payload_size = 0;
  std::chrono::milliseconds watchdog{60'000};
  /// Non-owning; may be null.
  TraceLog* trace = nullptr;
};

class Endpoint;

/// In-process message-passing substrate for a pipeline of workers.
///
/// Owns one FIFO link per pipeline edge, the blocking all-reduce used by the
/// synchronous driver and the termination coordinator used by the
/// asynchronous one. Workers interact only through their Endpoint.
class Communicator {
 public:
  explicit Communicator(int size, CommOptions options = {});
  ~Communicator();

  Communicator(const Communicator&) = delete;
  Communicator& operator=(const Communicator&) = delete;

  int size() const { return size_; }
  const CommOptions& options() const { return options_; }

  /// Handle for one worker. Each rank must be claimed at most once.
  Endpoint endpoint(WorkerId rank);

  /// Wakes every blocked call with CommAborted. Idempotent.
  void abort(const std::string& reason);
  bool aborted() const { return aborted_.load(); }

  bool terminated() const { return terminated_.load(); }
  ConvergenceState convergence_state() const;

  std::uint64_t total_sent() const;
  std::uint64_t total_consumed() const;

 private:
  friend class Endpoint;

  struct Link {
    std::mutex mutex;
    std::condition_variable cv;
    std::deque<Message> queue;
    bool closed = false;
    std::uint64_t sent = 0;
    std::uint64_t consumed = 0;
    long last_iteration = -1;
  };

  void send(WorkerId from, long iteration, const Field& payload);
  Received recv(WorkerId at, bool blocking);
  void close_link(WorkerId from);
  double allreduce(WorkerId rank, double local_norm);
  ConvergenceState publish(const ResidualReport& report);

  void trace(long epoch, int rank, TraceEvent ev, long iteration, double norm) const;
  void close_epoch_locked();
  std::uint64_t consumed_by(WorkerId rank);
  [[noreturn]] void throw_aborted() const;

  int size_;
  CommOptions options_;
  std::vector<std::unique_ptr<Link>> links_;  // links_[i] carries i -> i+1
  std::vector<bool> claimed_;
  std::mutex claim_mutex_;

  std::atomic<bool> aborted_{false};
  std::atomic<bool> terminated_{false};
  std::string abort_reason_;
  mutable std::mutex abort_mutex_;

  // Synchronous all-reduce.
  std::mutex coll_mutex_;
  std::condition_variable coll_cv_;
  std::vector<double> coll_slots_;
  std::vector<bool> coll_arrived_;
  int coll_count_ = 0;
  std::uint64_t coll_generation_ = 0;
  double coll_result_ = 0.0;

  // Asynchronous termination coordinator.
  mutable std::mutex coord_mutex_;
  std::vector<std::optional<ReportEntry>> latest_;
  std::vector<std::uint64_t> consumed_at_report_;
  std::vector<bool> reported_this_epoch_;
  int pending_reports_;
  std::atomic<long> epoch_{0};
  TerminationDetector detector_;
  ConvergenceState state_;
};

/// One worker's handle onto a Communicator. Cheap to move; must not outlive
/// the Communicator.
class Endpoint {
 public:
  const CommGraph& graph() const { return graph_; }
  WorkerId rank() const { return graph_.rank; }

  /// Enqueues `payload` towards the successor. No-op for the last worker;
  /// silently dropped once the run has terminated. Never blocks on the
  /// receiver. Iteration tags must strictly increase.
  void send_state(long iteration, const Field& payload);

  /// Blocks until a message is pending and returns the newest one, discarding
  /// older pending ones. Returns source_closed if the sender closed its end
  /// and nothing is pending. Throws WatchdogTimeout after the watchdog limit.
  Received recv_blocking();

  /// Non-blocking variant: newest pending message, or nothing.
  Received recv_poll();

  /// Collective: every rank must call once per round. Returns
  /// sqrt(sum_n norm_n^2) with the sum taken in rank order.
  double update_residual_sync(double local_norm);

  /// Publishes a report to the termination coordinator and returns the most
  /// recent (possibly stale) convergence state. Never waits on other workers.
  ConvergenceState update_residual_async(const ResidualReport& report);

  /// Marks this worker's outgoing link as closed.
  void close();

 private:
  friend class Communicator;
  Endpoint(Communicator* comm, CommGraph graph) : comm_(comm), graph_(std::move(graph)) {}

  Communicator* comm_;
  CommGraph graph_;
};

}  // namespace parareal::comm
