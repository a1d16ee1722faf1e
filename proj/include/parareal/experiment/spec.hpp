#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "parareal/num/exp_ode.hpp"
#include "parareal/num/pricing.hpp"
#include "parareal/num/propagator.hpp"
#include "parareal/solver/config.hpp"

namespace parareal::experiment {

enum class OutputFormat { csv, jsonl };
enum class ProblemKind { black_scholes, exp_ode };

/// Configuration problem tied to one key of the flat config document.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ExperimentSpec {
  ProblemKind problem = ProblemKind::black_scholes;
  num::MarketParams market{100.0, 80.0, 0.03, 0.2, 0.0};
  std::vector<double> sweep;    // "dT"
  std::vector<double> targets;  // "Ve": closed-form prices to calibrate maturity against
  std::optional<double> maturity;

  int workers = 16;
  double dt = 0.001;
  std::size_t grid_points = 1201;
  double x_max = 6.0;
  num::Scheme scheme = num::Scheme::backward_euler;
  std::optional<double> thresh;
  long max_iter = 0;
  Mode mode = Mode::async;
  std::vector<unsigned> seeds;
  double delay_ms = 0.0;
  int repeats = 1;

  double ode_rate = -1.0;
  double ode_u0 = 1.0;
  num::OdeScheme ode_coarse = num::OdeScheme::backward_euler;

  OutputFormat format = OutputFormat::csv;
  std::string out;    // empty: stdout
  std::string trace;  // empty: no trace

  /// Threshold in effect: explicit value or the per-problem default.
  double res_thresh() const;

  /// Throws ConfigError naming the first offending key.
  void validate() const;
};

/// Keys accepted in config documents and as --key flags.
const std::vector<std::string>& config_keys();

/// Builds and validates a spec from a flat JSON object. Unknown keys and
/// malformed values raise ConfigError.
ExperimentSpec parse_config(const nlohmann::json& doc);

/// Reads a flat JSON object from disk (ConfigError with key "config" on I/O
/// or syntax problems).
nlohmann::json load_config_document(const std::filesystem::path& path);

}  // namespace parareal::experiment
