#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace wkit::exec {

/// Worker threads to use. Taken from WKIT_THREADS (0 or 1 = sequential);
/// when unset, the hardware concurrency. set_thread_count overrides both.
unsigned thread_count();
void set_thread_count(std::optional<unsigned> count);

/// Evaluates fn(i) for i in [0, n) and returns the hit with the smallest
/// index, regardless of which thread finishes first. fn returns
/// std::optional<T>. Indices past the best hit found so far are skipped.
template <typename T, typename Fn>
std::optional<std::pair<std::size_t, T>> first_hit(std::size_t n, Fn&& fn, std::size_t min_parallel = 64) {
  const unsigned threads = thread_count();
  if (threads <= 1 || n < min_parallel) {
    for (std::size_t i = 0; i < n; ++i)
      if (std::optional<T> hit = fn(i)) return std::pair<std::size_t, T>{i, std::move(*hit)};
    return std::nullopt;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{n};
  std::mutex lock;
  std::optional<T> best_value;
  std::exception_ptr failure;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || i > best.load()) return;
      try {
        std::optional<T> hit = fn(i);
        if (!hit) continue;
        std::lock_guard guard(lock);
        if (i < best.load()) {
          best.store(i);
          best_value = std::move(hit);
        }
      } catch (...) {
        std::lock_guard guard(lock);
        if (!failure) failure = std::current_exception();
        best.store(0);
        return;
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    const unsigned spawn = threads < n ? threads : static_cast<unsigned>(n);
    for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  if (!best_value) return std::nullopt;
  return std::pair<std::size_t, T>{best.load(), std::move(*best_value)};
}

}  // namespace wkit::exec
