#include "parareal/experiment/spec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <utility>

namespace parareal::experiment {

using nlohmann::json;

namespace {

template <typename T>
T get_as(const json& doc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(key, std::string("malformed value (") + e.what() + ")");
  }
}

template <typename T>
std::vector<T> get_list(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (v.is_array()) return get_as<std::vector<T>>(doc, key);
  return {get_as<T>(doc, key)};
}

template <typename Enum>
Enum get_enum(const json& doc, const std::string& key,
              std::initializer_list<std::pair<const char*, Enum>> choices) {
  const auto s = get_as<std::string>(doc, key);
  for (const auto& [name, value] : choices) {
    if (s == name) return value;
  }
  std::string allowed;
  for (const auto& [name, value] : choices) allowed += std::string(allowed.empty() ? "" : "|") + name;
  throw ConfigError(key, "unknown value '" + s + "' (expected " + allowed + ")");
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "problem", "mode",    "workers", "dT",        "Ve",      "maturity",    "dt",
      "spot",    "strike",  "rate",    "sigma",     "thresh",  "max-iter",    "grid-points",
      "x-max",   "scheme",  "seeds",   "delay-ms",  "repeats", "ode-rate",    "ode-u0",
      "ode-coarse", "format", "out",   "trace"};
  return keys;
}

double ExperimentSpec::res_thresh() const {
  if (thresh) return *thresh;
  return problem == ProblemKind::exp_ode ? 1e-8 : 1e-6;
}

void ExperimentSpec::validate() const {
  if (sweep.empty()) throw ConfigError("dT", "sweep is empty: give at least one dT value");
  for (double d : sweep) {
    if (!(d > 0.0)) throw ConfigError("dT", "sweep entry " + std::to_string(d) + " must be positive");
    if (!(d > dt)) {
      throw ConfigError("dT", "sweep entry " + std::to_string(d) + " must exceed dt = " +
                                  std::to_string(dt));
    }
  }
  if (workers < 1) throw ConfigError("workers", "must be >= 1");
  if (!(dt > 0.0)) throw ConfigError("dt", "must be positive");
  if (thresh && !(*thresh > 0.0)) throw ConfigError("thresh", "must be positive");
  if (max_iter < 0) throw ConfigError("max-iter", "must be >= 0");
  if (repeats < 1) throw ConfigError("repeats", "must be >= 1");
  if (delay_ms < 0.0) throw ConfigError("delay-ms", "must be >= 0");
  if (problem == ProblemKind::black_scholes) {
    if (!(market.spot > 0.0)) throw ConfigError("spot", "must be positive");
    if (!(market.strike > 0.0)) throw ConfigError("strike", "must be positive");
    if (!(market.sigma > 0.0)) throw ConfigError("sigma", "must be positive");
    if (grid_points < 3) throw ConfigError("grid-points", "must be >= 3");
    if (!(x_max > 0.0)) throw ConfigError("x-max", "must be positive");
    if (std::abs(std::log(market.spot / market.strike)) >= x_max) {
      throw ConfigError("x-max", "ln(spot/strike) must lie inside (-x-max, x-max)");
    }
    if (!targets.empty() && targets.size() != sweep.size()) {
      throw ConfigError("Ve", "needs one target per dT entry");
    }
    if (targets.empty() && !maturity) {
      throw ConfigError("maturity", "give either Ve targets or an explicit maturity");
    }
    if (maturity && !(*maturity > 0.0)) throw ConfigError("maturity", "must be positive");
  }
}

ExperimentSpec parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config", "expected a flat key-value object");
  const auto& keys = config_keys();
  for (const auto& [key, value] : doc.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(key, "unknown key");
    }
    if (value.is_object()) throw ConfigError(key, "nested objects are not allowed");
  }

  ExperimentSpec s;
  auto has = [&](const char* k) { return doc.contains(k) && !doc.at(k).is_null(); };

  if (has("problem")) {
    s.problem = get_enum<ProblemKind>(doc, "problem",
                         {{"black-scholes", ProblemKind::black_scholes},
                          {"exp-ode", ProblemKind::exp_ode}});
  }
  if (has("mode")) s.mode = get_enum<Mode>(doc, "mode", {{"sync", Mode::sync}, {"async", Mode::async}});
  if (has("workers")) s.workers = get_as<int>(doc, "workers");
  if (!has("dT")) throw ConfigError("dT", "missing sweep: give at least one dT value");
  s.sweep = get_list<double>(doc, "dT");
  if (has("Ve")) s.targets = get_list<double>(doc, "Ve");
  if (has("maturity")) s.maturity = get_as<double>(doc, "maturity");
  if (has("dt")) s.dt = get_as<double>(doc, "dt");
  if (has("spot")) s.market.spot = get_as<double>(doc, "spot");
  if (has("strike")) s.market.strike = get_as<double>(doc, "strike");
  if (has("rate")) s.market.rate = get_as<double>(doc, "rate");
  if (has("sigma")) s.market.sigma = get_as<double>(doc, "sigma");
  if (has("thresh")) s.thresh = get_as<double>(doc, "thresh");
  if (has("max-iter")) s.max_iter = get_as<long>(doc, "max-iter");
  if (has("grid-points")) s.grid_points = get_as<std::size_t>(doc, "grid-points");
  if (has("x-max")) s.x_max = get_as<double>(doc, "x-max");
  if (has("scheme")) {
    s.scheme = get_enum<num::Scheme>(doc, "scheme",
                        {{"backward-euler", num::Scheme::backward_euler},
                         {"crank-nicolson", num::Scheme::crank_nicolson}});
  }
  if (has("seeds")) s.seeds = get_list<unsigned>(doc, "seeds");
  if (has("delay-ms")) s.delay_ms = get_as<double>(doc, "delay-ms");
  if (has("repeats")) s.repeats = get_as<int>(doc, "repeats");
  if (has("ode-rate")) s.ode_rate = get_as<double>(doc, "ode-rate");
  if (has("ode-u0")) s.ode_u0 = get_as<double>(doc, "ode-u0");
  if (has("ode-coarse")) {
    s.ode_coarse = get_enum<num::OdeScheme>(doc, "ode-coarse",
                            {{"exact", num::OdeScheme::exact},
                             {"backward-euler", num::OdeScheme::backward_euler}});
  }
  if (has("format")) {
    s.format = get_enum<OutputFormat>(doc, "format", {{"csv", OutputFormat::csv}, {"jsonl", OutputFormat::jsonl}});
  }
  if (has("out")) s.out = get_as<std::string>(doc, "out");
  if (has("trace")) s.trace = get_as<std::string>(doc, "trace");

  s.validate();
  return s;
}

json load_config_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", path.string() + ": " + e.what());
  }
}

}  // namespace parareal::experiment
