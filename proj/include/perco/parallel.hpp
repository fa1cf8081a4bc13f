#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace perco {

// Worker count from PERCO_WORKERS, else the hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("PERCO_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline int resolve_workers(int requested) { return requested > 0 ? requested : default_workers(); }

// Calls fn(worker, trial) for every trial in [0, trials), split into
// contiguous blocks across workers. Results must be written per trial and
// reduced by the caller in trial order, so output never depends on `workers`.
template <class Fn>
void for_each_trial(std::size_t trials, int workers, Fn&& fn) {
  const auto count = static_cast<std::size_t>(std::max(1, std::min<int>(resolve_workers(workers),
                                                                        static_cast<int>(std::max<std::size_t>(trials, 1)))));
  if (count == 1) {
    for (std::size_t t = 0; t < trials; ++t) fn(std::size_t{0}, t);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    const std::size_t begin = trials * w / count;
    const std::size_t end = trials * (w + 1) / count;
    pool.emplace_back([&, w, begin, end] {
      try {
        for (std::size_t t = begin; t < end; ++t) fn(w, t);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

// Number of workers for_each_trial will actually use; size scratch by this.
inline std::size_t worker_slots(std::size_t trials, int workers) {
  return static_cast<std::size_t>(std::max(1, std::min<int>(resolve_workers(workers),
                                                            static_cast<int>(std::max<std::size_t>(trials, 1)))));
}

}  // namespace perco
