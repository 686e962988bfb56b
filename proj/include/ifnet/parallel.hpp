#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ifnet {

namespace detail {
inline std::atomic<unsigned> thread_override{0};
inline thread_local bool inside_worker = false;
}  // namespace detail

// Overrides IFNET_THREADS for this process; 0 clears the override.
inline void set_thread_count(unsigned n) { detail::thread_override = n; }

// Worker count: the override, else IFNET_THREADS if set to a positive
// integer, else the hardware concurrency.
inline unsigned thread_count() {
  if (const unsigned o = detail::thread_override.load()) return o;
  if (const char* env = std::getenv("IFNET_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [0, count). Work is handed out by an atomic counter;
// callers write results into slot i so output order never depends on
// scheduling. The first exception (lowest index) is rethrown after join.
// Calls made from inside a worker run sequentially.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1 || detail::inside_worker) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_index = count;
  auto worker = [&] {
    detail::inside_worker = true;
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  parallel_for(count, thread_count(), std::forward<Body>(body));
}

}  // namespace ifnet
