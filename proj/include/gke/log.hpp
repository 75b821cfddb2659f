#pragma once

#include <string>

namespace gke {

enum class LogLevel { off = 0, info = 1, debug = 2 };

// Level comes from the GKE_LOG environment variable ("info" or "debug"),
// read once per process. Anything else keeps logging off.
LogLevel log_level();

void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace gke
