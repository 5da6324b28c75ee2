#include "wkit/exec.hpp"

#include <cstdlib>
#include <string>

namespace wkit::exec {

namespace {

std::atomic<int> override_count{-1};

unsigned from_environment() {
  const char* raw = std::getenv("WKIT_THREADS");
  if (raw == nullptr || *raw == '\0') {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
  try {
    const long parsed = std::stol(raw);
    return parsed <= 0 ? 1U : static_cast<unsigned>(parsed);
  } catch (const std::exception&) {
    return 1;
  }
}

}  // namespace

unsigned thread_count() {
  const int forced = override_count.load();
  if (forced >= 0) return forced == 0 ? 1U : static_cast<unsigned>(forced);
  static const unsigned env = from_environment();
  return env;
}

void set_thread_count(std::optional<unsigned> count) {
  override_count.store(count ? static_cast<int>(*count) : -1);
}

}  // namespace wkit::exec
