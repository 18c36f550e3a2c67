#ifndef QLATTICE_PARALLEL_HPP
#define QLATTICE_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qlattice {

namespace detail {

inline std::atomic<unsigned>& thread_cap() {
  static std::atomic<unsigned> cap{0};
  return cap;
}

}  // namespace detail

/// Worker count for parallel loops: an explicit set_max_threads value, else
/// QLATTICE_THREADS from the environment, else the hardware concurrency.
inline unsigned max_threads() {
  if (unsigned cap = detail::thread_cap().load(); cap != 0) return cap;
  if (const char* env = std::getenv("QLATTICE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

/// 0 restores the default.
inline void set_max_threads(unsigned n) { detail::thread_cap().store(n); }

/// Runs body(i) for i in [0, count). Iterations must be independent; results
/// should be written to per-index slots so output order does not depend on
/// scheduling. The first exception thrown by any iteration is rethrown.
template <class Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(max_threads(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace qlattice

#endif  // QLATTICE_PARALLEL_HPP
