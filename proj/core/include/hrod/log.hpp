#pragma once

#include <functional>
#include <string_view>

namespace hrod {

enum class LogLevel { Info, Warning };

using LogSink = std::function<void(LogLevel, std::string_view)>;

/// Replaces the process-wide diagnostic sink. The default writes warnings
/// to stderr; pass an empty function to silence everything.
void set_log_sink(LogSink sink);

void log_message(LogLevel level, std::string_view message);

inline void log_warning(std::string_view message) { log_message(LogLevel::Warning, message); }

}  // namespace hrod
