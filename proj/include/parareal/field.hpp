#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace parareal {

/// Grid function carried between slabs: nodal values plus the transformed
/// time at which they are valid.
struct Field {
  std::vector<double> values;
  double tau = 0.0;

  Field() = default;
  Field(std::vector<double> v, double t) : values(std::move(v)), tau(t) {}

  std::size_t size() const { return values.size(); }

  friend bool operator==(const Field&, const Field&) = default;
};

inline void require_same_shape(const Field& a, const Field& b, const char* what) {
  if (a.size() != b.size()) {
    throw std::invalid_argument(std::string(what) + ": field length mismatch (" +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
}

}  // namespace parareal
