#include "parareal/num/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace parareal::num {

SpatialGrid::SpatialGrid(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_points_(n_points) {
  if (n_points < 3) throw std::invalid_argument("SpatialGrid: need at least 3 points");
  if (!(x_min < 0.0 && 0.0 < x_max)) {
    throw std::invalid_argument("SpatialGrid: require x_min < 0 < x_max");
  }
  h_ = (x_max - x_min) / static_cast<double>(n_points - 1);
}

double SpatialGrid::x(std::size_t i) const {
  if (i + 1 == n_points_) return x_max_;
  return x_min_ + static_cast<double>(i) * h_;
}

double sample_field(const Field& field, const SpatialGrid& grid, double x) {
  if (field.size() != grid.n_points()) {
    throw std::invalid_argument("sample_field: field does not match grid");
  }
  if (!(x >= grid.x_min() && x <= grid.x_max())) {
    throw std::invalid_argument("sample_field: x = " + std::to_string(x) +
                                " outside the grid");
  }
  const double s = (x - grid.x_min()) / grid.h();
  auto i = static_cast<std::size_t>(std::floor(s));
  i = std::min(i, grid.n_points() - 2);
  const double theta = s - static_cast<double>(i);
  if (theta == 0.0) return field.values[i];
  if (theta == 1.0) return field.values[i + 1];
  return (1.0 - theta) * field.values[i] + theta * field.values[i + 1];
}

}  // namespace parareal::num
