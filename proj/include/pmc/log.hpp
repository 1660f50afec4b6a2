#pragma once

#include <string_view>

namespace pmc {

enum class LogLevel { Quiet, Info, Debug };

/// Read once from PMC_LOG (quiet, info or debug); quiet when unset.
LogLevel log_level();
void set_log_level(LogLevel level);

/// Writes one line to stderr when `level` is enabled.
void log_line(LogLevel level, std::string_view message);

}  // namespace pmc
