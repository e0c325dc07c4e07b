#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace relbell {

// Evaluates fn(i) for i in [0, n) on a small worker pool and returns the
// results in index order, whatever order they complete in. The first
// exception thrown by any task is rethrown after all workers join.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn, unsigned max_workers = 0) {
  std::vector<T> out(n);
  unsigned workers = max_workers != 0 ? max_workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        const std::lock_guard lock(error_mutex);
        if (!error) {
          error = std::current_exception();
        }
        next = n;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
  return out;
}

}  // namespace relbell
