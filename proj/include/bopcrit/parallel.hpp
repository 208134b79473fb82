#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace bopcrit {

inline int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs fn(i) for every i in [begin, end) on up to `jobs` threads (<= 0 means
// use hardware concurrency). Indices are handed out dynamically; results must
// be written to per-index slots so the outcome is schedule-independent. The
// first exception thrown by fn is rethrown after all threads join.
inline void parallel_for(int begin, int end, int jobs, const std::function<void(int)>& fn) {
  const int count = end - begin;
  if (count <= 0) return;
  const int threads = std::min(resolve_jobs(jobs), count);
  if (threads <= 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }
  std::atomic<int> next{begin};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= end) break;
        try {
          fn(i);
        } catch (...) {
          {
            const std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
          }
          next.store(end);
          break;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace bopcrit
