#include "parareal/comm/graph.hpp"

#include <stdexcept>
#include <string>

namespace parareal::comm {

std::optional<WorkerId> CommGraph::predecessor() const {
  if (recv_neighbors.empty()) return std::nullopt;
  return recv_neighbors.front();
}

std::optional<WorkerId> CommGraph::successor() const {
  if (send_neighbors.empty()) return std::nullopt;
  return send_neighbors.front();
}

CommGraph build_pipeline_graph(WorkerId rank, int size) {
  if (size < 1) {
    throw std::invalid_argument("build_pipeline_graph: size must be >= 1, got " +
                                std::to_string(size));
  }
  if (rank < 0 || rank >= size) {
    throw std::invalid_argument("build_pipeline_graph: rank " + std::to_string(rank) +
                                " out of range for size " + std::to_string(size));
  }
  CommGraph g;
  g.rank = rank;
  g.size = size;
  if (rank > 0) g.recv_neighbors.push_back(rank - 1);
  if (rank < size - 1) g.send_neighbors.push_back(rank + 1);
  return g;
}

}  // namespace parareal::comm
