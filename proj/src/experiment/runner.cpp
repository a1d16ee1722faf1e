#include "parareal/experiment/runner.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>

#include "parareal/comm/trace.hpp"
#include "parareal/num/grid.hpp"
#include "parareal/num/problems.hpp"
#include "parareal/num/transform.hpp"
#include "parareal/solver/drivers.hpp"

namespace parareal::experiment {

namespace {

struct RowSetup {
  PararealConfig config;
  double horizon = 0.0;    // solver time at the last slab end
  double maturity = 0.0;   // years; black-scholes only
  std::function<double(const Solution&)> value;  // V_a from a solution
  double reference = 0.0;  // V_e
};

template <typename... Args>
void say(std::ostream* log, fmt::format_string<Args...> f, Args&&... args) {
  if (log) *log << fmt::format(f, std::forward<Args>(args)...) << '\n';
}

RowSetup setup_black_scholes(const ExperimentSpec& spec, std::size_t row, std::ostream* log) {
  RowSetup s;
  num::MarketParams market = spec.market;
  if (!spec.targets.empty()) {
    s.maturity = calibrate_maturity(market, spec.targets[row]);
    say(log, "row dT={}: calibrated maturity T={:.6f} years against V_e={:.4f}", spec.sweep[row],
        s.maturity, spec.targets[row]);
  } else {
    s.maturity = *spec.maturity;
  }
  market.maturity = s.maturity;

  const auto c = num::transform_constants(market.rate, market.sigma);
  const num::SpatialGrid grid(-spec.x_max, spec.x_max, spec.grid_points);
  s.horizon = s.maturity * market.sigma * market.sigma / 2.0;
  const double slab = s.horizon / spec.workers;
  if (spec.dt > slab) {
    throw ConfigError("dt", fmt::format("fine step {} exceeds the slab length {:.6g} "
                                        "(horizon {:.6g} over {} workers)",
                                        spec.dt, slab, s.horizon, spec.workers));
  }
  say(log, "row dT={}: tau_max={:.6g}, slab={:.6g}, fine steps per slab={}", spec.sweep[row],
      s.horizon, slab, num::Propagator::step_sizes(slab, spec.dt).size());

  s.config.n_workers = spec.workers;
  s.config.coarse_step = slab;
  s.config.fine_step = spec.dt;
  s.config.problem = num::make_black_scholes_problem(c, grid, slab, spec.dt, spec.scheme);

  const double x = std::log(market.spot / market.strike);
  const double strike = market.strike;
  s.value = [grid, c, x, strike](const Solution& sol) {
    const Field& last = sol.endpoints.back();
    return num::invert_transform(num::sample_field(last, grid, x), x, last.tau, strike, c);
  };
  s.reference = num::closed_form_price(market);
  return s;
}

RowSetup setup_exp_ode(const ExperimentSpec& spec, std::size_t row) {
  RowSetup s;
  const double slab = spec.sweep[row];
  s.horizon = slab * spec.workers;
  s.config.n_workers = spec.workers;
  s.config.coarse_step = slab;
  s.config.fine_step = spec.dt;
  s.config.problem = num::make_exp_ode_problem(spec.ode_rate, spec.ode_u0, slab, spec.dt,
                                               spec.ode_coarse, num::OdeScheme::exact);
  s.value = [](const Solution& sol) { return sol.endpoints.back().values.front(); };
  return s;
}

}  // namespace

double calibrate_maturity(const num::MarketParams& market, double target_Ve) {
  auto residual = [&](double T) {
    num::MarketParams m = market;
    m.maturity = T;
    return num::closed_form_price(m) - target_Ve;
  };
  double lo = kMaturityLow;
  double hi = kMaturityHigh;
  double f_lo = residual(lo);
  const double f_hi = residual(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw CalibrationError(fmt::format(
        "calibrate_maturity: target {} not bracketed by prices {:.6f}..{:.6f} on [{}, {}] years",
        target_Ve, f_lo + target_Ve, f_hi + target_Ve, lo, hi));
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = residual(mid);
    if (std::abs(f_mid) <= 1e-6) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, std::ostream* log) {
  spec.validate();
  std::unique_ptr<comm::TraceLog> trace;
  if (!spec.trace.empty()) trace = std::make_unique<comm::TraceLog>(spec.trace);

  std::vector<ResultRow> rows;
  for (std::size_t i = 0; i < spec.sweep.size(); ++i) {
    RowSetup setup = spec.problem == ProblemKind::black_scholes
                         ? setup_black_scholes(spec, i, log)
                         : setup_exp_ode(spec, i);
    PararealConfig& cfg = setup.config;
    cfg.mode = spec.mode;
    cfg.res_thresh = spec.res_thresh();
    cfg.max_iter = spec.max_iter;
    cfg.trace = trace.get();

    if (spec.problem == ProblemKind::exp_ode) {
      setup.reference = setup.value(sequential_fine_reference(cfg));
    }

    // Without seeds there is a single run with no injected latency.
    std::vector<std::optional<unsigned>> schedules;
    if (spec.seeds.empty()) {
      schedules.emplace_back(std::nullopt);
    } else {
      for (unsigned seed : spec.seeds) schedules.emplace_back(seed);
    }

    ResultRow row;
    row.dT = spec.sweep[i];
    row.Ve = setup.reference;
    double value_sum = 0.0;
    double time_sum = 0.0;
    int runs = 0;
    try {
      for (const auto& seed : schedules) {
        for (int rep = 0; rep < spec.repeats; ++rep) {
          cfg.before_send = nullptr;
          if (seed && spec.delay_ms > 0.0) {
            cfg.before_send = make_uniform_delay(*seed, spec.delay_ms, spec.workers);
          }
          const RunResult result = run(cfg);
          value_sum += setup.value(result.solution);
          time_sum += result.wall_time;
          if (runs == 0) row.iters = result.iterations;
          ++runs;
        }
      }
      row.Va = value_sum / runs;
      row.time_s = time_sum / runs;
      row.eps_a = std::abs(row.Va - row.Ve);
      row.eps_r = row.eps_a / std::abs(row.Ve);
      say(log, "row dT={}: V_a={:.6f} V_e={:.6f} eps_r={:.3e} over {} run(s), {:.3f} s each "
          "(time includes worker spawn and the initial coarse sweep)",
          row.dT, row.Va, row.Ve, row.eps_r, runs, row.time_s);
    } catch (const std::exception& e) {
      row.converged = false;
      row.Va = row.eps_a = row.eps_r = std::numeric_limits<double>::quiet_NaN();
      row.time_s = runs > 0 ? time_sum / runs : 0.0;
      say(log, "row dT={}: FAILED: {}", row.dT, e.what());
    }
    rows.push_back(std::move(row));
  }
  if (trace) trace->flush();
  return rows;
}

}  // namespace parareal::experiment
