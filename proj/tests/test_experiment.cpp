#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "parareal/experiment/runner.hpp"
#include "parareal/experiment/spec.hpp"
#include "parareal/experiment/table.hpp"
#include "parareal/num/pricing.hpp"

using namespace parareal;
using namespace parareal::experiment;
using nlohmann::json;

namespace {

const num::MarketParams kMarket{100.0, 80.0, 0.03, 0.2, 0.0};

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "parareal_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + PARAREAL_CLI + "\" " + args + " >" +
                          scratch("cli_stdout.txt").string() + " 2>" +
                          scratch("cli_stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("bundled sweep config") {
  const ExperimentSpec spec = parse_config(
      load_config_document(std::filesystem::path(PARAREAL_SOURCE_DIR) / "configs/black_scholes_sweep.json"));
  CHECK(spec.problem == ProblemKind::black_scholes);
  CHECK(spec.mode == Mode::async);
  CHECK(spec.market.spot == 100.0);
  CHECK(spec.market.strike == 80.0);
  CHECK(spec.market.rate == 0.03);
  CHECK(spec.market.sigma == 0.2);
  CHECK(spec.dt == 0.001);
  CHECK(spec.grid_points == 1201u);
  CHECK(spec.x_max == 6.0);
  CHECK(spec.sweep == std::vector<double>{0.05, 0.15, 0.25, 0.35, 0.45});
  CHECK(spec.targets == std::vector<double>{23.9426, 31.5477, 37.7192, 42.9960, 47.6339});
  CHECK(spec.res_thresh() == 1e-6);
}

TEST_CASE("config errors name their key") {
  auto key_of = [](const json& doc) {
    try {
      parse_config(doc);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  CHECK(key_of(json::object()) == "dT");
  CHECK(std::string([] {
          try {
            parse_config(json::object());
          } catch (const ConfigError& e) {
            return std::string(e.what());
          }
          return std::string();
        }()).find("missing sweep") != std::string::npos);
  CHECK(key_of({{"dT", {0.1}}, {"bogus", 1}}) == "bogus");
  CHECK(key_of({{"dT", {0.1}}, {"workers", 0}, {"maturity", 1.0}}) == "workers");
  CHECK(key_of({{"dT", {0.1}}, {"mode", "lazy"}, {"maturity", 1.0}}) == "mode");
  CHECK(key_of({{"dT", {0.1, 0.2}}, {"Ve", {23.9}}}) == "Ve");
  CHECK(key_of({{"dT", "0.1"}}) == "dT");
}

TEST_CASE("fine step larger than a slab is rejected") {
  ExperimentSpec spec = parse_config({{"dT", {0.05}}, {"maturity", 0.01}, {"workers", 16}});
  CHECK_THROWS_AS(run_experiment(spec), ConfigError);
  try {
    run_experiment(spec);
  } catch (const ConfigError& e) {
    CHECK(e.key() == "dt");
  }
}

TEST_CASE("maturity calibration") {
  const double low_price = [] {
    num::MarketParams m = kMarket;
    m.maturity = kMaturityLow;
    return num::closed_form_price(m);
  }();
  CHECK(calibrate_maturity(kMarket, low_price + 1e-7) == doctest::Approx(kMaturityLow).epsilon(1e-2));

  const double t1 = calibrate_maturity(kMarket, 23.9426);
  CHECK(t1 == doctest::Approx(1.2).epsilon(1e-3));
  num::MarketParams m = kMarket;
  m.maturity = t1;
  CHECK(std::abs(num::closed_form_price(m) - 23.9426) <= 1e-6);
  CHECK(calibrate_maturity(kMarket, 37.7192) > t1);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> price(21.0, 70.0);
  for (int i = 0; i < 20; ++i) {
    const double a = price(rng);
    const double b = price(rng);
    if (a < b) CHECK(calibrate_maturity(kMarket, a) <= calibrate_maturity(kMarket, b));
  }
  CHECK_THROWS_AS(calibrate_maturity(kMarket, 5.0), CalibrationError);
  CHECK_THROWS_AS(calibrate_maturity(kMarket, 150.0), CalibrationError);
}

TEST_CASE("table output") {
  const ResultRow row{0.05, 23.9432, 23.9426, 6e-4, 2.5e-5, 0.125, {1, 2, 3}, true};
  std::ostringstream csv;
  write_table(csv, {row}, OutputFormat::csv);
  const std::string text = csv.str();
  CHECK(text.rfind(std::string(kTableHeader) + "\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2);
  CHECK(text.find("23.9432") != std::string::npos);

  std::ostringstream jl;
  write_table(jl, {row, row, row}, OutputFormat::jsonl);
  const std::string jtext = jl.str();
  CHECK(std::count(jtext.begin(), jtext.end(), '\n') == 3);
  std::istringstream lines(jtext);
  std::string line;
  while (std::getline(lines, line)) {
    const json j = json::parse(line);
    CHECK(j.at("iters") == json::array({1, 2, 3}));
  }

  ResultRow failed = row;
  failed.converged = false;
  std::ostringstream f;
  write_table(f, {failed}, OutputFormat::csv);
  CHECK(f.str().find("FAILED") != std::string::npos);
  CHECK_FALSE(parse_table(f.str(), OutputFormat::csv).at(0).converged);
}

TEST_CASE("table round-trips at printed precision") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto format : {OutputFormat::csv, OutputFormat::jsonl}) {
    std::vector<ResultRow> rows;
    for (int i = 0; i < 10; ++i) {
      const double ve = 20.0 + 30.0 * u(rng);
      const double va = ve + 0.01 * (u(rng) - 0.5);
      rows.push_back({0.05 * (i + 1), va, ve, std::abs(va - ve), std::abs(va - ve) / ve,
                      10.0 * u(rng), {long(i), long(i + 1)}, true});
    }
    std::ostringstream out;
    write_table(out, rows, format);
    const auto back = parse_table(out.str(), format);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(back[i].dT == doctest::Approx(rows[i].dT));
      CHECK(std::abs(back[i].Va - rows[i].Va) <= 5e-5);
      CHECK(std::abs(back[i].Ve - rows[i].Ve) <= 5e-5);
      CHECK(back[i].eps_r == doctest::Approx(rows[i].eps_r).epsilon(1e-4));
      CHECK(back[i].iters == rows[i].iters);
      CHECK(back[i].converged);
    }
  }
}

TEST_CASE("emit_table writes files and reports I/O failure") {
  const ResultRow row{0.1, 1.0, 1.0, 0.0, 0.0, 0.0, {1}, true};
  const auto path = scratch("emit.csv");
  emit_table({row}, OutputFormat::csv, path);
  CHECK(parse_table(slurp(path), OutputFormat::csv).size() == 1u);
  CHECK_THROWS_AS(emit_table({row}, OutputFormat::csv, "/nonexistent-dir/x/out.csv"),
                  std::runtime_error);
}

TEST_CASE("exp-ode sweep through the runner") {
  for (const char* mode : {"sync", "async"}) {
    const ExperimentSpec spec = parse_config({{"problem", "exp-ode"},
                                              {"mode", mode},
                                              {"workers", 4},
                                              {"dT", {0.25, 0.5}},
                                              {"dt", 0.0078125}});
    const auto rows = run_experiment(spec);
    REQUIRE(rows.size() == 2u);
    for (const auto& r : rows) {
      CHECK(r.converged);
      CHECK(r.eps_r < 1e-7);
      CHECK(r.iters.size() == 4u);
    }
    CHECK(rows[0].Ve == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  }
}

TEST_CASE("command-line exit codes") {
  const auto out = scratch("cli.csv");
  std::filesystem::remove(out);
  CHECK(run_cli("--problem exp-ode --workers 3 --dT 0.1,0.2 --dt 0.01 --mode sync --out \"" +
                out.string() + "\"") == 0);
  const auto rows = parse_table(slurp(out), OutputFormat::csv);
  REQUIRE(rows.size() == 2u);
  CHECK(rows[1].dT == doctest::Approx(0.2));

  CHECK(run_cli("--problem exp-ode --dT 0.1 --bogus 1") == 1);
  CHECK(run_cli("--problem exp-ode --dT 0.1 --mode lazy") == 1);
  CHECK(run_cli("--problem exp-ode --workers 6 --dT 0.5 --dt 0.01 --max-iter 1") == 2);

  const auto cfg = scratch("cli.json");
  std::ofstream(cfg) << R"({"problem": "exp-ode", "workers": 2, "dT": [0.3], "dt": 0.1})";
  CHECK(run_cli("--config \"" + cfg.string() + "\" --format jsonl") == 0);
  CHECK(json::parse(slurp(scratch("cli_stdout.txt"))).at("dT") == 0.3);
}

TEST_CASE("sync sweeps reproduce row for row") {
  const ExperimentSpec spec = parse_config({{"mode", "sync"},
                                            {"workers", 4},
                                            {"dT", {0.05, 0.15}},
                                            {"Ve", {23.9426, 31.5477}},
                                            {"grid-points", 301}});
  const auto a = run_experiment(spec);
  const auto b = run_experiment(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].Va == b[i].Va);
    CHECK(a[i].iters == b[i].iters);
  }
}
