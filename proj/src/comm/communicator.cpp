#include "parareal/comm/communicator.hpp"

#include <cmath>

namespace parareal::comm {

Communicator::Communicator(int size, CommOptions options)
    : size_(size),
      options_(options),
      claimed_(size > 0 ? static_cast<std::size_t>(size) : 0, false),
      coll_slots_(claimed_.size(), 0.0),
      coll_arrived_(claimed_.size(), false),
      latest_(claimed_.size()),
      consumed_at_report_(claimed_.size(), 0),
      reported_this_epoch_(claimed_.size(), false),
      pending_reports_(size) {
  if (size < 1) throw std::invalid_argument("Communicator: size must be >= 1");
  if (!(options_.res_thresh > 0.0)) {
    throw std::invalid_argument("Communicator: res_thresh must be positive");
  }
  for (int i = 0; i + 1 < size; ++i) links_.push_back(std::make_unique<Link>());
}

Communicator::~Communicator() {
  if (options_.trace) options_.trace->flush();
}

Endpoint Communicator::endpoint(WorkerId rank) {
  CommGraph graph = build_pipeline_graph(rank, size_);
  std::lock_guard lock(claim_mutex_);
  if (claimed_[rank]) {
    throw ContractViolation("Communicator: rank " + std::to_string(rank) + " claimed twice");
  }
  claimed_[rank] = true;
  return Endpoint(this, std::move(graph));
}

void Communicator::abort(const std::string& reason) {
  {
    std::lock_guard lock(abort_mutex_);
    if (aborted_.load()) return;
    abort_reason_ = reason;
    aborted_.store(true);
  }
  for (auto& link : links_) {
    std::lock_guard lock(link->mutex);
    link->cv.notify_all();
  }
  std::lock_guard lock(coll_mutex_);
  coll_cv_.notify_all();
}

void Communicator::throw_aborted() const {
  std::lock_guard lock(abort_mutex_);
  throw CommAborted("communicator aborted: " + abort_reason_);
}

ConvergenceState Communicator::convergence_state() const {
  std::lock_guard lock(coord_mutex_);
  return state_;
}

std::uint64_t Communicator::total_sent() const {
  std::uint64_t n = 0;
  for (const auto& link : links_) {
    std::lock_guard lock(link->mutex);
    n += link->sent;
  }
  return n;
}

std::uint64_t Communicator::total_consumed() const {
  std::uint64_t n = 0;
  for (const auto& link : links_) {
    std::lock_guard lock(link->mutex);
    n += link->consumed;
  }
  return n;
}

void Communicator::trace(long epoch, int rank, TraceEvent ev, long iteration,
                         double norm) const {
  if (options_.trace) options_.trace->record({epoch, rank, ev, iteration, norm});
}

void Communicator::send(WorkerId from, long iteration, const Field& payload) {
  if (from + 1 >= size_) return;
  if (options_.payload_size != 0 && payload.size() != options_.payload_size) {
    throw ContractViolation("send_state: payload length " + std::to_string(payload.size()) +
                            " != configured " + std::to_string(options_.payload_size));
  }
  if (aborted_.load()) throw_aborted();
  Link& link = *links_[from];
  std::lock_guard lock(link.mutex);
  if (iteration <= link.last_iteration) {
    throw ContractViolation("send_state: iteration tags must increase (" +
                            std::to_string(iteration) + " after " +
                            std::to_string(link.last_iteration) + ")");
  }
  link.last_iteration = iteration;
  if (terminated_.load() || link.closed) {
    trace(epoch_, from, TraceEvent::drop, iteration, 0.0);
    return;
  }
  link.queue.push_back(Message{from, iteration, payload});
  ++link.sent;
  trace(epoch_, from, TraceEvent::send, iteration, 0.0);
  link.cv.notify_all();
}

Received Communicator::recv(WorkerId at, bool blocking) {
  if (at == 0) {
    throw ContractViolation("recv: rank 0 has no predecessor");
  }
  Link& link = *links_[at - 1];
  std::unique_lock lock(link.mutex);
  if (blocking) {
    const auto deadline = std::chrono::steady_clock::now() + options_.watchdog;
    const bool ready = link.cv.wait_until(lock, deadline, [&] {
      return !link.queue.empty() || link.closed || aborted_.load();
    });
    if (!ready) {
      throw WatchdogTimeout("recv_blocking: rank " + std::to_string(at) +
                            " waited longer than the watchdog limit");
    }
  }
  if (aborted_.load()) {
    lock.unlock();
    throw_aborted();
  }
  Received out;
  if (!link.queue.empty()) {
    link.consumed += link.queue.size();
    out.message = std::move(link.queue.back());
    link.queue.clear();
    trace(epoch_, at, TraceEvent::adopt, out.message->sender_iteration, 0.0);
  } else {
    out.source_closed = link.closed;
  }
  return out;
}

void Communicator::close_link(WorkerId from) {
  if (from + 1 >= size_) return;
  Link& link = *links_[from];
  std::lock_guard lock(link.mutex);
  link.closed = true;
  link.cv.notify_all();
}

double Communicator::allreduce(WorkerId rank, double local_norm) {
  std::unique_lock lock(coll_mutex_);
  if (aborted_.load()) {
    lock.unlock();
    throw_aborted();
  }
  if (coll_arrived_[rank]) {
    throw ContractViolation("update_residual_sync: rank " + std::to_string(rank) +
                            " joined the same round twice");
  }
  coll_arrived_[rank] = true;
  coll_slots_[rank] = local_norm;
  const std::uint64_t generation = coll_generation_;
  if (++coll_count_ == size_) {
    double sum = 0.0;
    for (double n : coll_slots_) sum += n * n;
    coll_result_ = std::sqrt(sum);
    coll_count_ = 0;
    coll_arrived_.assign(coll_arrived_.size(), false);
    ++coll_generation_;
    coll_cv_.notify_all();
    return coll_result_;
  }
  const auto deadline = std::chrono::steady_clock::now() + options_.watchdog;
  const bool done = coll_cv_.wait_until(lock, deadline, [&] {
    return coll_generation_ != generation || aborted_.load();
  });
  if (coll_generation_ != generation) return coll_result_;
  lock.unlock();
  if (!done) {
    throw WatchdogTimeout("update_residual_sync: rank " + std::to_string(rank) +
                          " timed out waiting for the other workers");
  }
  throw_aborted();
}

std::uint64_t Communicator::consumed_by(WorkerId rank) {
  if (rank == 0) return 0;
  Link& link = *links_[rank - 1];
  std::lock_guard lock(link.mutex);
  return link.consumed;
}

ConvergenceState Communicator::publish(const ResidualReport& report) {
  if (!(report.local_norm >= 0.0)) {
    throw std::invalid_argument("update_residual_async: local_norm must be >= 0");
  }
  if (report.local_converged != (report.local_norm < options_.res_thresh)) {
    throw std::invalid_argument(
        "update_residual_async: local_converged disagrees with the configured threshold");
  }
  if (aborted_.load()) throw_aborted();

  const std::uint64_t consumed = consumed_by(report.rank);
  std::lock_guard lock(coord_mutex_);
  const auto r = static_cast<std::size_t>(report.rank);
  const bool quiet = consumed == consumed_at_report_[r];
  consumed_at_report_[r] = consumed;
  latest_[r] = ReportEntry{report, quiet};
  trace(epoch_, report.rank,
        report.local_converged ? TraceEvent::report_conv : TraceEvent::report_busy,
        report.iteration, report.local_norm);
  if (!reported_this_epoch_[r]) {
    reported_this_epoch_[r] = true;
    if (--pending_reports_ == 0) close_epoch_locked();
  }
  return state_;
}

void Communicator::close_epoch_locked() {
  // Consistent cut over every link: hold all link locks at once (ascending
  // order; send/recv only ever take one).
  std::vector<std::unique_lock<std::mutex>> held;
  held.reserve(links_.size());
  for (auto& link : links_) held.emplace_back(link->mutex);

  EpochSnapshot snap;
  snap.epoch = ++epoch_;
  snap.reports = latest_;
  for (std::size_t r = 0; r < snap.reports.size(); ++r) {
    if (r > 0 && snap.reports[r] && links_[r - 1]->consumed != consumed_at_report_[r]) {
      snap.reports[r]->quiet = false;
    }
  }
  for (const auto& link : links_) {
    snap.total_sent += link->sent;
    snap.total_consumed += link->consumed;
  }
  state_ = detector_.observe_epoch(snap);
  trace(state_.epoch, -1, TraceEvent::epoch, state_.epoch, state_.global_norm);
  if (state_.terminate && !terminated_.load()) {
    terminated_.store(true);
    trace(state_.epoch, -1, TraceEvent::terminate, state_.epoch, state_.global_norm);
  }
  reported_this_epoch_.assign(reported_this_epoch_.size(), false);
  pending_reports_ = size_;
}

void Endpoint::send_state(long iteration, const Field& payload) {
  if (!graph_.has_successor()) return;
  comm_->send(graph_.rank, iteration, payload);
}

Received Endpoint::recv_blocking() {
  if (!graph_.has_predecessor()) {
    throw ContractViolation("recv_blocking: rank " + std::to_string(graph_.rank) +
                            " has no predecessor");
  }
  return comm_->recv(graph_.rank, true);
}

Received Endpoint::recv_poll() {
  if (!graph_.has_predecessor()) {
    throw ContractViolation("recv_poll: rank " + std::to_string(graph_.rank) +
                            " has no predecessor");
  }
  return comm_->recv(graph_.rank, false);
}

double Endpoint::update_residual_sync(double local_norm) {
  return comm_->allreduce(graph_.rank, local_norm);
}

ConvergenceState Endpoint::update_residual_async(const ResidualReport& report) {
  if (report.rank != graph_.rank) {
    throw ContractViolation("update_residual_async: report rank does not match endpoint");
  }
  return comm_->publish(report);
}

void Endpoint::close() { comm_->close_link(graph_.rank); }

}  // namespace parareal::comm
