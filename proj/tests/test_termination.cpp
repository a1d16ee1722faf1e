#include <doctest.h>

#include <cmath>
#include <limits>

#include "parareal/comm/communicator.hpp"
#include "parareal/comm/termination.hpp"

using namespace parareal;
using namespace parareal::comm;

namespace {

EpochSnapshot snapshot(long epoch, std::vector<bool> converged, std::uint64_t sent,
                       std::uint64_t consumed, double norm = 0.0) {
  EpochSnapshot s;
  s.epoch = epoch;
  s.total_sent = sent;
  s.total_consumed = consumed;
  for (std::size_t r = 0; r < converged.size(); ++r) {
    s.reports.push_back(ReportEntry{{static_cast<int>(r), converged[r] ? 0.0 : norm + 1.0,
                                     converged[r], epoch},
                                    true});
  }
  return s;
}

}  // namespace

TEST_CASE("detector: two consecutive quiet converged epochs terminate") {
  TerminationDetector d;
  CHECK_FALSE(d.observe_epoch(snapshot(1, {true, true, true}, 5, 5)).terminate);
  CHECK(d.observe_epoch(snapshot(2, {true, true, true}, 5, 5)).terminate);
}

TEST_CASE("detector: a send between the epochs restarts confirmation") {
  TerminationDetector d;
  CHECK_FALSE(d.observe_epoch(snapshot(1, {true, true}, 5, 5)).terminate);
  CHECK_FALSE(d.observe_epoch(snapshot(2, {true, true}, 6, 6)).terminate);
  CHECK(d.observe_epoch(snapshot(3, {true, true}, 6, 6)).terminate);
}

TEST_CASE("detector: in-flight messages block termination") {
  TerminationDetector d;
  CHECK_FALSE(d.observe_epoch(snapshot(1, {true, true}, 5, 4)).terminate);
  CHECK_FALSE(d.observe_epoch(snapshot(2, {true, true}, 5, 4)).terminate);
  CHECK_FALSE(d.armed());
}

TEST_CASE("detector: a non-quiet report blocks termination") {
  TerminationDetector d;
  auto s = snapshot(1, {true, true}, 0, 0);
  s.reports[1]->quiet = false;
  d.observe_epoch(s);
  s.epoch = 2;
  CHECK_FALSE(d.observe_epoch(s).terminate);
}

TEST_CASE("detector: one unconverged rank keeps terminate false") {
  TerminationDetector d;
  for (long e = 1; e < 10; ++e) {
    CHECK_FALSE(d.observe_epoch(snapshot(e, {true, false, true}, 0, 0)).terminate);
  }
}

TEST_CASE("detector: single worker") {
  TerminationDetector d;
  CHECK_FALSE(d.observe_epoch(snapshot(1, {true}, 0, 0)).terminate);
  CHECK(d.observe_epoch(snapshot(2, {true}, 0, 0)).terminate);
}

TEST_CASE("detector: global norm is the rank-ordered Euclidean combination") {
  EpochSnapshot s;
  s.reports.push_back(ReportEntry{{0, 3.0, false, 1}, true});
  s.reports.push_back(ReportEntry{{1, 4.0, false, 1}, true});
  CHECK(TerminationDetector::combine_norms(s.reports) == 5.0);
  s.reports.push_back(std::nullopt);
  CHECK(std::isinf(TerminationDetector::combine_norms(s.reports)));
}

TEST_CASE("async residual: first call reports the +inf sentinel") {
  Communicator comm(3);
  auto e0 = comm.endpoint(0);
  const ConvergenceState st = e0.update_residual_async({0, 0.0, true, 1});
  CHECK(std::isinf(st.global_norm));
  CHECK_FALSE(st.terminate);
  CHECK(st.epoch == 0);
}

TEST_CASE("async residual: report flag must agree with the threshold") {
  CommOptions opts;
  opts.res_thresh = 1e-3;
  Communicator comm(1, opts);
  auto e0 = comm.endpoint(0);
  CHECK_THROWS_AS(e0.update_residual_async({0, 1.0, true, 1}), std::invalid_argument);
  CHECK_THROWS_AS(e0.update_residual_async({0, 1e-6, false, 1}), std::invalid_argument);
}

TEST_CASE("async residual: late unconverged report keeps the run alive") {
  CommOptions opts;
  opts.res_thresh = 1e-3;
  Communicator comm(3, opts);
  std::vector<Endpoint> eps;
  for (int r = 0; r < 3; ++r) eps.push_back(comm.endpoint(r));
  for (long k = 1; k <= 20; ++k) {
    eps[0].update_residual_async({0, 0.0, true, k});
    eps[1].update_residual_async({1, 0.0, true, k});
    const auto st = eps[2].update_residual_async({2, 0.5, false, k});
    REQUIRE_FALSE(st.terminate);
  }
  CHECK(comm.convergence_state().global_norm == doctest::Approx(0.5));
}

TEST_CASE("async residual: consumption after a report cancels its quietness") {
  CommOptions opts;
  opts.res_thresh = 1e-3;
  Communicator comm(2, opts);
  auto e0 = comm.endpoint(0);
  auto e1 = comm.endpoint(1);
  e0.send_state(1, Field{{1.0}, 0.0});
  // Rank 1 reports converged before looking at its inbox, then consumes.
  e1.update_residual_async({1, 0.0, true, 1});
  REQUIRE(e1.recv_poll().message);
  e0.update_residual_async({0, 0.0, true, 1});  // epoch 1: rank 1 not quiet
  e0.update_residual_async({0, 0.0, true, 2});
  e1.update_residual_async({1, 0.0, true, 2});  // epoch 2: report follows a consumption
  CHECK_FALSE(comm.terminated());
  e0.update_residual_async({0, 0.0, true, 3});
  e1.update_residual_async({1, 0.0, true, 3});  // epoch 3: first candidate
  CHECK_FALSE(comm.terminated());
  e0.update_residual_async({0, 0.0, true, 4});
  e1.update_residual_async({1, 0.0, true, 4});  // epoch 4: confirmed
  CHECK(comm.terminated());
}

TEST_CASE("trace records round-trip through their text form") {
  TraceRecord r{12, 3, TraceEvent::report_conv, 77, 1.25e-7};
  const TraceRecord back = TraceLog::parse(TraceLog::format(r));
  CHECK(back.epoch == 12);
  CHECK(back.rank == 3);
  CHECK(back.event == TraceEvent::report_conv);
  CHECK(back.iteration == 77);
  CHECK(back.norm == r.norm);
  const TraceRecord inf = TraceLog::parse("0,-1,epoch,0,inf");
  CHECK(std::isinf(inf.norm));
  CHECK_THROWS_AS(TraceLog::parse("1,2,bogus,3,4"), std::invalid_argument);
  CHECK_THROWS_AS(TraceLog::parse("1,2,send"), std::invalid_argument);
}
