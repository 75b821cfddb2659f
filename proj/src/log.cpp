#include "gke/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace gke {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("GKE_LOG");
    if (env == nullptr) return LogLevel::off;
    if (std::strcmp(env, "debug") == 0) return LogLevel::debug;
    if (std::strcmp(env, "info") == 0) return LogLevel::info;
    return LogLevel::off;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::info) std::fprintf(stderr, "[gke] %s\n", msg.c_str());
}

void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::debug) std::fprintf(stderr, "[gke:debug] %s\n", msg.c_str());
}

}  // namespace gke
