#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace slt {

/// Worker count: `requested` if > 0, else $SLT_THREADS if set and positive,
/// else std::thread::hardware_concurrency() (at least 1).
unsigned resolve_workers(unsigned requested);

/// Calls body(i) for every i in [0, count) using up to `workers` threads.
/// Indices are assigned in contiguous blocks; callers write results into
/// per-index slots, so any reduction they do afterwards is order-stable.
/// The exception thrown for the lowest failing index is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  if (count == 0) {
    return;
  }
  const std::size_t threads = std::min<std::size_t>(workers == 0 ? 1 : workers, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      body(i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        const std::size_t begin = count * t / threads;
        const std::size_t end = count * (t + 1) / threads;
        for (std::size_t i = begin; i < end; ++i) {
          try {
            body(i);
          } catch (...) {
            errors[t] = std::current_exception();
            return;
          }
        }
      });
    }
  }
  for (std::size_t t = 0; t < threads; ++t) {
    if (errors[t]) {
      std::rethrow_exception(errors[t]);
    }
  }
}

}  // namespace slt
