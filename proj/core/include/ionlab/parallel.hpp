#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace ionlab::detail {

/// Runs task(i) for i in [0, count) on `jobs` threads (0 = hardware concurrency).
/// Tasks must write only to slots they own; ordering of results is the caller's.
template <typename Task>
void parallel_for(int count, int jobs, Task&& task) {
  int workers = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(count, 1));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) task(i);
    });
  }
}

}  // namespace ionlab::detail
