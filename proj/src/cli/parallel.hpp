#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace raman::cli {

// Runs body(i) for i in [0, count) on up to `jobs` threads. The first exception
// thrown by any index is rethrown once every worker has stopped.
template <class F>
void parallel_for(std::size_t count, int jobs, F&& body) {
  const auto workers = static_cast<std::size_t>(std::clamp<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), 1, std::max<std::size_t>(count, 1)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;
  std::size_t error_index = count;
  std::mutex guard;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count && !stop; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(guard);
            // keep the error of the lowest index so failures are reproducible
            if (i < error_index) {
              error_index = i;
              error = std::current_exception();
            }
            stop = true;
          }
        }
      });
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace raman::cli
