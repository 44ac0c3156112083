#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace hardy {

namespace detail {
inline std::atomic<unsigned>& thread_limit() {
  static std::atomic<unsigned> limit{0};
  return limit;
}
}  // namespace detail

/// Upper bound on worker threads; 0 restores the hardware default.
inline void set_max_threads(unsigned n) { detail::thread_limit().store(n); }

inline unsigned max_threads() {
  const unsigned lim = detail::thread_limit().load();
  if (lim) return lim;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(begin, end) over contiguous chunks of [0, n). Results must be
/// written to per-index slots so that the outcome does not depend on the
/// number of workers.
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t min_chunk = 256) {
  const std::size_t workers = std::min<std::size_t>(max_threads(), std::max<std::size_t>(1, n / min_chunk));
  if (workers <= 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t step = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = w * step;
      const std::size_t hi = std::min(n, lo + step);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi] {
        try {
          body(lo, hi);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

/// Pairwise (tree) summation in a fixed order over the index range.
inline double pairwise_sum(std::span<const double> x) {
  if (x.size() <= 16) {
    double s = 0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = x.size() / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

}  // namespace hardy
