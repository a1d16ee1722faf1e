#pragma once

#include "parareal/comm/graph.hpp"
#include "parareal/field.hpp"
#include "parareal/num/propagator.hpp"

namespace parareal {

/// Per-worker parareal variables.
struct WorkerState {
  comm::WorkerId rank = 0;
  Field lambda0;  // incoming value at the slab start
  Field w;        // latest coarse result G(lambda0)
  Field v;        // latest fine result F(lambda0); empty until the first fine solve
  Field U;        // current slab-end solution
  long k = 0;
};

/// Coarse sweep to the worker's slab: lambda0 = G^rank(u0), w = U = G(lambda0).
WorkerState init_sweep(comm::WorkerId rank, const Field& u0, const num::Propagator& coarse,
                       double slab);

/// w_new + v - w_old, pointwise. All three must share length and tau.
Field parareal_update(const Field& w_old, const Field& v, const Field& w_new);

/// Unweighted Euclidean norm of U_new - U_old.
double local_residual(const Field& U_new, const Field& U_old);

}  // namespace parareal
