#include "parareal/num/tridiagonal.hpp"

#include <stdexcept>
#include <string>

namespace parareal::num {

std::vector<double> solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                                      std::span<const double> sup, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (sub.size() != n || sup.size() != n || rhs.size() != n) {
    throw std::invalid_argument("solve_tridiagonal: band lengths differ");
  }
  if (n == 0) return {};

  std::vector<double> c_star(n);
  std::vector<double> x(n);
  double m = diag[0];
  if (m == 0.0) throw std::domain_error("solve_tridiagonal: zero pivot at row 0");
  c_star[0] = sup[0] / m;
  x[0] = rhs[0] / m;
  for (std::size_t i = 1; i < n; ++i) {
    m = diag[i] - sub[i] * c_star[i - 1];
    if (m == 0.0) {
      throw std::domain_error("solve_tridiagonal: zero pivot at row " + std::to_string(i));
    }
    c_star[i] = sup[i] / m;
    x[i] = (rhs[i] - sub[i] * x[i - 1]) / m;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c_star[i] * x[i + 1];
  return x;
}

}  // namespace parareal::num
