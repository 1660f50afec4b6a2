#include "pmc/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace pmc {

namespace {

LogLevel from_env() {
  const char* raw = std::getenv("PMC_LOG");
  if (raw == nullptr) return LogLevel::Quiet;
  const std::string value(raw);
  if (value == "debug") return LogLevel::Debug;
  if (value == "info") return LogLevel::Info;
  return LogLevel::Quiet;
}

std::atomic<LogLevel>& current() {
  static std::atomic<LogLevel> level{from_env()};
  return level;
}

std::mutex& sink() {
  static std::mutex m;
  return m;
}

}  // namespace

LogLevel log_level() { return current().load(); }

void set_log_level(LogLevel level) { current().store(level); }

void log_line(LogLevel level, std::string_view message) {
  if (level == LogLevel::Quiet || static_cast<int>(level) > static_cast<int>(log_level())) return;
  const std::lock_guard<std::mutex> lock(sink());
  std::cerr << (level == LogLevel::Debug ? "[debug] " : "[info] ") << message << '\n';
}

}  // namespace pmc
