#include "parareal/comm/trace.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace parareal::comm {

namespace {

constexpr std::array<std::pair<TraceEvent, std::string_view>, 7> kEventNames{{
    {TraceEvent::send, "send"},
    {TraceEvent::drop, "drop"},
    {TraceEvent::adopt, "adopt"},
    {TraceEvent::report_conv, "report_conv"},
    {TraceEvent::report_busy, "report_busy"},
    {TraceEvent::epoch, "epoch"},
    {TraceEvent::terminate, "terminate"},
}};

template <typename T>
T parse_number(std::string_view field, std::string_view line) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::invalid_argument("trace: malformed field '" + std::string(field) +
                                "' in line '" + std::string(line) + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(TraceEvent e) {
  for (const auto& [ev, name] : kEventNames) {
    if (ev == e) return name;
  }
  return "unknown";
}

TraceEvent trace_event_from_string(std::string_view s) {
  for (const auto& [ev, name] : kEventNames) {
    if (name == s) return ev;
  }
  throw std::invalid_argument("trace: unknown event '" + std::string(s) + "'");
}

TraceLog::TraceLog(const std::filesystem::path& path) : out_(path) {
  if (!out_) throw std::runtime_error("trace: cannot open " + path.string());
}

void TraceLog::record(const TraceRecord& r) {
  std::lock_guard lock(mutex_);
  records_.push_back(r);
  if (out_.is_open()) out_ << format(r) << '\n';
}

std::vector<TraceRecord> TraceLog::records() const {
  std::lock_guard lock(mutex_);
  return records_;
}

void TraceLog::flush() {
  std::lock_guard lock(mutex_);
  if (out_.is_open()) out_.flush();
}

std::string TraceLog::format(const TraceRecord& r) {
  char norm[32];
  std::snprintf(norm, sizeof norm, "%.17g", r.norm);
  return std::to_string(r.epoch) + ',' + std::to_string(r.rank) + ',' +
         std::string(to_string(r.event)) + ',' + std::to_string(r.iteration) + ',' + norm;
}

TraceRecord TraceLog::parse(std::string_view line) {
  std::array<std::string_view, 5> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    const auto comma = line.find(',', start);
    if ((comma == std::string_view::npos) != (i == fields.size() - 1)) {
      throw std::invalid_argument("trace: expected 5 fields in '" + std::string(line) + "'");
    }
    fields[i] = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    start = comma + 1;
  }
  TraceRecord r;
  r.epoch = parse_number<long>(fields[0], line);
  r.rank = parse_number<int>(fields[1], line);
  r.event = trace_event_from_string(fields[2]);
  r.iteration = parse_number<long>(fields[3], line);
  const std::string norm(fields[4]);
  char* end = nullptr;
  r.norm = std::strtod(norm.c_str(), &end);
  if (end != norm.c_str() + norm.size()) {
    throw std::invalid_argument("trace: malformed norm in '" + std::string(line) + "'");
  }
  return r;
}

}  // namespace parareal::comm
