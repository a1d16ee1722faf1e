#include "parareal/solver/drivers.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

#include "parareal/comm/communicator.hpp"
#include "parareal/solver/worker.hpp"

namespace parareal {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct WorkerOutcome {
  Field endpoint;
  std::vector<IterationRecord> records;
  long iterations = 0;
  std::exception_ptr error;
};

WorkerOutcome sync_worker(const PararealConfig& cfg, comm::Endpoint& ep, Clock::time_point start) {
  const int rank = ep.rank();
  const double t0 = cfg.slab_start(rank);
  const double t1 = cfg.slab_end(rank);
  const auto& G = *cfg.problem.coarse;
  const auto& F = *cfg.problem.fine;
  const double thresh = cfg.res_thresh;
  const long max_rounds = cfg.effective_max_iter();

  WorkerOutcome out;
  std::vector<double> history;
  WorkerState s = init_sweep(rank, cfg.problem.u0, G, cfg.coarse_step);

  double global = thresh;
  while (global >= thresh && s.k < rank) {
    s.v = F.propagate(s.lambda0, t0, t1);
    long tag = -1;
    const comm::Received got = ep.recv_blocking();
    if (got.message) {
      s.lambda0 = got.message->payload;
      tag = got.message->sender_iteration;
    }
    Field w_new = G.propagate(s.lambda0, t0, t1);
    const Field U_prev = s.U;
    s.U = parareal_update(s.w, s.v, w_new);
    s.w = std::move(w_new);
    ep.send_state(s.k + 1, s.U);
    const double local = local_residual(s.U, U_prev);
    global = ep.update_residual_sync(local);
    history.push_back(global);
    ++s.k;
    out.records.push_back({rank, s.k, local, global, seconds_since(start), tag});
  }

  if (global >= thresh) {
    // The incoming value is final: one fine solve gives the exact slab end.
    s.v = F.propagate(s.lambda0, t0, t1);
    s.U = s.v;
    ep.send_state(s.k + 1, s.U);
    while (global >= thresh) {
      if (s.k >= max_rounds) {
        throw NonConvergenceError("run_sync: no convergence after " + std::to_string(s.k) +
                                      " rounds",
                                  history);
      }
      global = ep.update_residual_sync(0.0);
      history.push_back(global);
      ++s.k;
      out.records.push_back({rank, s.k, 0.0, global, seconds_since(start), -1});
    }
  }

  ep.close();
  out.endpoint = std::move(s.U);
  out.iterations = s.k;
  return out;
}

WorkerOutcome async_worker(const PararealConfig& cfg, comm::Endpoint& ep, Clock::time_point start) {
  const int rank = ep.rank();
  const double t0 = cfg.slab_start(rank);
  const double t1 = cfg.slab_end(rank);
  const auto& G = *cfg.problem.coarse;
  const auto& F = *cfg.problem.fine;
  const bool has_pred = ep.graph().has_predecessor();
  const bool has_succ = ep.graph().has_successor();
  const long max_productive = cfg.effective_max_iter();

  WorkerOutcome out;
  std::vector<double> history;
  WorkerState s = init_sweep(rank, cfg.problem.u0, G, cfg.coarse_step);
  std::optional<std::vector<double>> last_sent;
  long productive = 0;

  while (true) {
    s.v = F.propagate(s.lambda0, t0, t1);
    long tag = -1;
    if (has_pred) {
      const comm::Received got = ep.recv_poll();
      if (got.message) {
        s.lambda0 = got.message->payload;
        tag = got.message->sender_iteration;
      }
    }
    const bool adopted = tag >= 0;
    Field w_new = (cfg.cache_coarse && !adopted) ? s.w : G.propagate(s.lambda0, t0, t1);
    const Field U_prev = s.U;
    s.U = parareal_update(s.w, s.v, w_new);
    s.w = std::move(w_new);
    ++s.k;

    // A bit-identical resend carries no information, so only changes go out.
    if (has_succ && (!last_sent || *last_sent != s.U.values)) {
      if (cfg.before_send) cfg.before_send(rank, s.k);
      ep.send_state(s.k, s.U);
      last_sent = s.U.values;
    }

    const double local = local_residual(s.U, U_prev);
    const comm::ConvergenceState st =
        ep.update_residual_async({rank, local, local < cfg.res_thresh, s.k});
    history.push_back(local);
    std::optional<double> global;
    if (std::isfinite(st.global_norm)) global = st.global_norm;
    out.records.push_back({rank, s.k, local, global, seconds_since(start), tag});
    if (st.terminate) break;

    const bool idle = !adopted && local == 0.0;
    if (!idle && ++productive > max_productive) {
      throw NonConvergenceError("run_async: rank " + std::to_string(rank) + " exceeded " +
                                    std::to_string(max_productive) + " iterations",
                                history);
    }
    if (Clock::now() - start > cfg.watchdog) {
      throw comm::WatchdogTimeout("run_async: no global termination within the watchdog limit");
    }
    if (idle && cfg.idle_backoff.count() > 0) std::this_thread::sleep_for(cfg.idle_backoff);
  }

  ep.close();
  out.endpoint = std::move(s.U);
  out.iterations = s.k;
  return out;
}

using WorkerFn = WorkerOutcome (*)(const PararealConfig&, comm::Endpoint&, Clock::time_point);

RunResult run_workers(const PararealConfig& cfg, WorkerFn fn) {
  cfg.validate();
  comm::CommOptions opts;
  opts.res_thresh = cfg.res_thresh;
  opts.payload_size = cfg.problem.u0.size();
  opts.watchdog = cfg.watchdog;
  opts.trace = cfg.trace;
  comm::Communicator comm(cfg.n_workers, opts);

  std::vector<comm::Endpoint> endpoints;
  endpoints.reserve(cfg.n_workers);
  for (int r = 0; r < cfg.n_workers; ++r) endpoints.push_back(comm.endpoint(r));

  std::vector<WorkerOutcome> outcomes(cfg.n_workers);
  const auto start = Clock::now();
  {
    std::vector<std::jthread> threads;
    threads.reserve(cfg.n_workers);
    for (int r = 0; r < cfg.n_workers; ++r) {
      threads.emplace_back([&, r] {
        try {
          outcomes[r] = fn(cfg, endpoints[r], start);
        } catch (const std::exception& e) {
          outcomes[r].error = std::current_exception();
          comm.abort("rank " + std::to_string(r) + ": " + e.what());
        } catch (...) {
          outcomes[r].error = std::current_exception();
          comm.abort("rank " + std::to_string(r) + ": unknown error");
        }
      });
    }
  }

  RunResult result;
  result.wall_time = seconds_since(start);

  // Surface the root cause rather than the CommAborted it triggered elsewhere.
  std::exception_ptr first_error;
  for (const auto& o : outcomes) {
    if (!o.error) continue;
    try {
      std::rethrow_exception(o.error);
    } catch (const comm::CommAborted&) {
      if (!first_error) first_error = o.error;
    } catch (...) {
      std::rethrow_exception(o.error);
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  for (auto& o : outcomes) {
    result.solution.endpoints.push_back(std::move(o.endpoint));
    result.iterations.push_back(o.iterations);
    result.records.insert(result.records.end(), o.records.begin(), o.records.end());
  }
  return result;
}

}  // namespace

RunResult run_sync(const PararealConfig& config) {
  if (config.mode != Mode::sync) throw std::invalid_argument("run_sync: config.mode is not sync");
  return run_workers(config, &sync_worker);
}

RunResult run_async(const PararealConfig& config) {
  if (config.mode != Mode::async) {
    throw std::invalid_argument("run_async: config.mode is not async");
  }
  return run_workers(config, &async_worker);
}

RunResult run(const PararealConfig& config) {
  return config.mode == Mode::sync ? run_sync(config) : run_async(config);
}

Solution sequential_fine_reference(const PararealConfig& config) {
  config.validate();
  Solution sol;
  Field lambda = config.problem.u0;
  for (int n = 0; n < config.n_workers; ++n) {
    lambda = config.problem.fine->propagate(lambda, config.slab_start(n), config.slab_end(n));
    sol.endpoints.push_back(lambda);
  }
  return sol;
}

SendHook make_uniform_delay(unsigned seed, double max_ms, int n_workers) {
  if (max_ms < 0.0) throw std::invalid_argument("make_uniform_delay: max_ms must be >= 0");
  // One engine per rank; each is only touched from its own worker thread.
  auto engines = std::make_shared<std::vector<std::mt19937_64>>();
  for (int r = 0; r < n_workers; ++r) {
    std::seed_seq seq{seed, static_cast<unsigned>(r)};
    engines->emplace_back(seq);
  }
  return [engines, max_ms](comm::WorkerId rank, long) {
    std::uniform_real_distribution<double> dist(0.0, max_ms);
    const double ms = dist((*engines)[static_cast<std::size_t>(rank)]);
    std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(ms));
  };
}

}  // namespace parareal
