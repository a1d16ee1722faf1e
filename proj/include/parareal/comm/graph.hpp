#pragma once

#include <optional>
#include <vector>

namespace parareal::comm {

using WorkerId = int;

/// Pipeline links of one worker: slab n receives its initial value from
/// slab n-1 and hands its end value to slab n+1.
struct CommGraph {
  WorkerId rank = 0;
  int size = 1;
  std::vector<WorkerId> recv_neighbors;
  std::vector<WorkerId> send_neighbors;

  bool has_predecessor() const { return !recv_neighbors.empty(); }
  bool has_successor() const { return !send_neighbors.empty(); }
  std::optional<WorkerId> predecessor() const;
  std::optional<WorkerId> successor() const;
};

/// Throws std::invalid_argument unless 0 <= rank < size.
CommGraph build_pipeline_graph(WorkerId rank, int size);

}  // namespace parareal::comm
