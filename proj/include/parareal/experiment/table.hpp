#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "parareal/experiment/spec.hpp"

namespace parareal::experiment {

struct ResultRow {
  double dT = 0.0;
  double Va = 0.0;
  double Ve = 0.0;
  double eps_a = 0.0;
  double eps_r = 0.0;
  double time_s = 0.0;
  std::vector<long> iters;
  bool converged = true;  // false rows print nan/null values and iters "FAILED"
};

/// Header of the CSV form; JSON-lines use the same keys.
inline constexpr const char* kTableHeader = "dT,Va,Ve,eps_a,eps_r,time_s,iters";

void write_table(std::ostream& out, const std::vector<ResultRow>& rows, OutputFormat format);

/// Writes to `path`, or to stdout when `path` is empty. Throws
/// std::runtime_error when the file cannot be written.
void emit_table(const std::vector<ResultRow>& rows, OutputFormat format,
                const std::filesystem::path& path);

/// Inverse of write_table, at printed precision.
std::vector<ResultRow> parse_table(const std::string& text, OutputFormat format);

}  // namespace parareal::experiment
