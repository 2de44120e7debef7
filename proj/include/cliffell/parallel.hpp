#pragma once

// Minimal fan-out helper. Work items are claimed through an atomic counter;
// callers store per-item results and reduce them in index order, so the
// outcome never depends on scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace cliffell {

// Defaults to the CLIFFELL_THREADS environment variable, else the hardware
// concurrency.
int worker_threads();
void set_worker_threads(int n);

namespace detail {
// Set on pool threads so that nested parallel_for calls run inline.
inline thread_local bool in_parallel_region = false;
}  // namespace detail

template <class F>
void parallel_for(std::size_t count, F&& f) {
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(worker_threads()), count);
  if (threads <= 1 || detail::in_parallel_region) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        detail::in_parallel_region = true;
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          try {
            f(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace cliffell
