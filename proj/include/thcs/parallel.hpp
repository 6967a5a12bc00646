#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace thcs {

/// Worker cap: `requested` if nonzero, else THCS_THREADS, else hardware concurrency.
unsigned worker_count(unsigned requested = 0);

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Work items must write
/// to disjoint outputs; the first exception thrown is rethrown after all workers join.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  if (n == 0) return;
  const unsigned used = static_cast<unsigned>(std::min<std::size_t>(n, workers == 0 ? 1 : workers));
  if (used <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(used - 1);
  for (unsigned t = 1; t < used; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace thcs
