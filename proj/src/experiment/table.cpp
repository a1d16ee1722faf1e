#include "parareal/experiment/table.hpp"

#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace parareal::experiment {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Printed forms. Prices carry 4 decimals like the published table; errors
// are too small for fixed notation and use 4 significant digits.
std::string fmt_dT(double v) { return fmt::format("{:g}", v); }
std::string fmt_price(double v) { return fmt::format("{:.4f}", v); }
std::string fmt_err(double v) { return fmt::format("{:.4e}", v); }
std::string fmt_time(double v) { return fmt::format("{:.4f}", v); }

std::string iters_text(const ResultRow& r) {
  if (!r.converged) return "FAILED";
  std::string s;
  for (std::size_t i = 0; i < r.iters.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(r.iters[i]);
  }
  return s;
}

std::vector<long> parse_iters(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!item.empty()) out.push_back(std::stol(item));
  }
  return out;
}

double parse_number(const std::string& s) {
  if (s == "nan") return kNaN;
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("table: malformed number '" + s + "'");
  return v;
}

json printed(const std::string& text) {
  if (text == "nan") return nullptr;
  return parse_number(text);
}

}  // namespace

void write_table(std::ostream& out, const std::vector<ResultRow>& rows, OutputFormat format) {
  if (rows.empty()) throw std::invalid_argument("emit_table: no rows");
  if (format == OutputFormat::csv) out << kTableHeader << '\n';
  for (const auto& r : rows) {
    const auto num = [&](double v, std::string (*f)(double)) {
      return r.converged ? f(v) : std::string("nan");
    };
    const std::string va = num(r.Va, fmt_price);
    const std::string eps_a = num(r.eps_a, fmt_err);
    const std::string eps_r = num(r.eps_r, fmt_err);
    if (format == OutputFormat::csv) {
      out << fmt_dT(r.dT) << ',' << va << ',' << fmt_price(r.Ve) << ',' << eps_a << ','
          << eps_r << ',' << fmt_time(r.time_s) << ',' << iters_text(r) << '\n';
    } else {
      json j;
      j["dT"] = parse_number(fmt_dT(r.dT));
      j["Va"] = printed(va);
      j["Ve"] = parse_number(fmt_price(r.Ve));
      j["eps_a"] = printed(eps_a);
      j["eps_r"] = printed(eps_r);
      j["time_s"] = parse_number(fmt_time(r.time_s));
      j["iters"] = r.converged ? json(r.iters) : json("FAILED");
      out << j.dump() << '\n';
    }
  }
}

void emit_table(const std::vector<ResultRow>& rows, OutputFormat format,
                const std::filesystem::path& path) {
  if (path.empty()) {
    write_table(std::cout, rows, format);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_table: cannot open " + path.string());
  write_table(out, rows, format);
  out.flush();
  if (!out) throw std::runtime_error("emit_table: write to " + path.string() + " failed");
}

std::vector<ResultRow> parse_table(const std::string& text, OutputFormat format) {
  std::vector<ResultRow> rows;
  std::stringstream in(text);
  std::string line;
  if (format == OutputFormat::csv) {
    if (!std::getline(in, line) || line != kTableHeader) {
      throw std::invalid_argument("parse_table: missing CSV header");
    }
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ResultRow r;
    if (format == OutputFormat::csv) {
      std::vector<std::string> cells;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      if (cells.size() != 7) throw std::invalid_argument("parse_table: expected 7 columns");
      r.dT = parse_number(cells[0]);
      r.Va = parse_number(cells[1]);
      r.Ve = parse_number(cells[2]);
      r.eps_a = parse_number(cells[3]);
      r.eps_r = parse_number(cells[4]);
      r.time_s = parse_number(cells[5]);
      r.converged = cells[6] != "FAILED";
      if (r.converged) r.iters = parse_iters(cells[6]);
    } else {
      const json j = json::parse(line);
      const auto get = [&](const char* k) {
        return j.at(k).is_null() ? kNaN : j.at(k).get<double>();
      };
      r.dT = get("dT");
      r.Va = get("Va");
      r.Ve = get("Ve");
      r.eps_a = get("eps_a");
      r.eps_r = get("eps_r");
      r.time_s = get("time_s");
      r.converged = !j.at("iters").is_string();
      if (r.converged) r.iters = j.at("iters").get<std::vector<long>>();
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace parareal::experiment
