#pragma once

#include <string_view>

// Minimal stderr logger. Level comes from THCS_LOG=debug|info|warn (default warn).
namespace thcs::log {

enum class Level { debug = 0, info = 1, warn = 2 };

bool enabled(Level level) noexcept;
void write(Level level, std::string_view message);

inline void debug(std::string_view m) {
  if (enabled(Level::debug)) write(Level::debug, m);
}
inline void info(std::string_view m) {
  if (enabled(Level::info)) write(Level::info, m);
}
inline void warn(std::string_view m) {
  if (enabled(Level::warn)) write(Level::warn, m);
}

}  // namespace thcs::log
