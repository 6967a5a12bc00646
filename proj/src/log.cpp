#include "thcs/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string>

namespace thcs::log {
namespace {

Level configured_level() noexcept {
  const char* env = std::getenv("THCS_LOG");
  if (env == nullptr) return Level::warn;
  const std::string v(env);
  if (v == "debug") return Level::debug;
  if (v == "info") return Level::info;
  return Level::warn;
}

}  // namespace

bool enabled(Level level) noexcept {
  static const Level threshold = configured_level();
  return level >= threshold;
}

void write(Level level, std::string_view message) {
  static std::mutex mutex;
  static constexpr const char* tags[] = {"debug", "info", "warn"};
  std::lock_guard lock(mutex);
  std::cerr << "[thcs " << tags[static_cast<int>(level)] << "] " << message << '\n';
}

}  // namespace thcs::log
