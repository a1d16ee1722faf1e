#include "parareal/solver/worker.hpp"

#include <cmath>
#include <stdexcept>

namespace parareal {

WorkerState init_sweep(comm::WorkerId rank, const Field& u0, const num::Propagator& coarse,
                       double slab) {
  if (u0.tau != 0.0) throw std::invalid_argument("init_sweep: u0 must sit at tau = 0");
  if (rank < 0) throw std::invalid_argument("init_sweep: negative rank");
  WorkerState s;
  s.rank = rank;
  s.lambda0 = u0;
  for (int i = 0; i < rank; ++i) {
    s.lambda0 = coarse.propagate(s.lambda0, i * slab, (i + 1) * slab);
  }
  s.w = coarse.propagate(s.lambda0, rank * slab, (rank + 1) * slab);
  s.U = s.w;
  return s;
}

Field parareal_update(const Field& w_old, const Field& v, const Field& w_new) {
  require_same_shape(w_old, v, "parareal_update");
  require_same_shape(w_old, w_new, "parareal_update");
  if (w_old.tau != v.tau || w_old.tau != w_new.tau) {
    throw std::invalid_argument("parareal_update: operands sit at different times");
  }
  Field out = w_new;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += v.values[i] - w_old.values[i];
  return out;
}

double local_residual(const Field& U_new, const Field& U_old) {
  require_same_shape(U_new, U_old, "local_residual");
  double sum = 0.0;
  for (std::size_t i = 0; i < U_new.size(); ++i) {
    const double d = U_new.values[i] - U_old.values[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace parareal
