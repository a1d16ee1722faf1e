#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace parareal::comm {

enum class TraceEvent {
  send,         // payload enqueued towards the successor
  drop,         // send attempted after termination
  adopt,        // receiver consumed a payload (iteration = sender's tag)
  report_conv,  // residual report with local_converged = true
  report_busy,  // residual report with local_converged = false
  epoch,        // coordinator closed an epoch (rank = -1, norm = global norm)
  terminate,    // coordinator declared global termination
};

std::string_view to_string(TraceEvent e);
TraceEvent trace_event_from_string(std::string_view s);

struct TraceRecord {
  long epoch = 0;
  int rank = -1;
  TraceEvent event = TraceEvent::epoch;
  long iteration = 0;
  double norm = 0.0;
};

/// Thread-safe append-only protocol log. One line per record:
///   epoch,rank,event,iteration,norm
/// Records are kept in memory and, when a path is given, streamed to disk.
class TraceLog {
 public:
  TraceLog() = default;
  explicit TraceLog(const std::filesystem::path& path);

  void record(const TraceRecord& r);
  std::vector<TraceRecord> records() const;
  void flush();

  static std::string format(const TraceRecord& r);
  static TraceRecord parse(std::string_view line);

 private:
  mutable std::mutex mutex_;
  std::vector<TraceRecord> records_;
  std::ofstream out_;
};

}  // namespace parareal::comm
