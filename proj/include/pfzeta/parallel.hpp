#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace pfz {

// Deterministic task-parallel map: results land in task order, so the
// outcome never depends on scheduling.
template <typename Task, typename Fn>
auto parallel_map(const std::vector<Task>& tasks, Fn fn)
    -> std::vector<decltype(fn(tasks.front()))> {
  using Result = decltype(fn(tasks.front()));
  std::size_t workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 2;
  std::vector<Result> out(tasks.size());
  if (tasks.size() <= 1 || workers <= 1) {
    for (std::size_t k = 0; k < tasks.size(); ++k) out[k] = fn(tasks[k]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t k = next.fetch_add(1);
      if (k >= tasks.size()) return;
      out[k] = fn(tasks[k]);
    }
  };
  std::vector<std::thread> pool;
  std::size_t n = std::min(workers, tasks.size());
  pool.reserve(n);
  for (std::size_t w = 0; w < n; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace pfz
