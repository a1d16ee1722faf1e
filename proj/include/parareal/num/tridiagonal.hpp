#pragma once

#include <span>
#include <vector>

namespace parareal::num {

/// Thomas algorithm for sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i].
/// sub[0] and sup[n-1] are ignored. No pivoting: the system is expected to be
/// diagonally dominant, which holds for the implicit heat steps used here.
std::vector<double> solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> sup, std::span<const double> rhs);

}  // namespace parareal::num
