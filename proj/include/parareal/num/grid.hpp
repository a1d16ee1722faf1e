#pragma once

#include <cstddef>

#include "parareal/field.hpp"

namespace parareal::num {

/// Uniform node-centred grid on [x_min, x_max].
class SpatialGrid {
 public:
  /// Requires n_points >= 3 and x_min < 0 < x_max.
  SpatialGrid(double x_min, double x_max, std::size_t n_points);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  std::size_t n_points() const { return n_points_; }
  double h() const { return h_; }
  double x(std::size_t i) const;

  friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;

 private:
  double x_min_;
  double x_max_;
  std::size_t n_points_;
  double h_;
};

/// Linear interpolation between the bracketing nodes; exact at nodes.
/// Throws std::invalid_argument outside [x_min, x_max] or on a length mismatch.
double sample_field(const Field& field, const SpatialGrid& grid, double x);

}  // namespace parareal::num
