#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace auctionlab {

// Runs task(k) for k in [0, count) on up to `workers` threads. Results are written per task,
// so the caller's merge order does not depend on scheduling.
template <class Task>
void parallel_tasks(std::size_t count, unsigned workers, Task task) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) task(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) task(k);
    });
  for (auto& t : pool) t.join();
}

// Visits every distinct ordering of `items` exactly once. Work is split by the first element;
// each split gets its own State, returned in ascending order of the first element.
template <class State, class Visit>
std::vector<State> for_each_arrangement(std::vector<int> items, unsigned workers, Visit visit) {
  std::sort(items.begin(), items.end());
  std::vector<int> heads = items;
  heads.erase(std::unique(heads.begin(), heads.end()), heads.end());
  std::vector<State> states(heads.size());
  if (items.empty()) return states;
  parallel_tasks(heads.size(), workers, [&](std::size_t k) {
    std::vector<int> arr;
    arr.reserve(items.size());
    arr.push_back(heads[k]);
    bool skipped = false;
    for (int v : items) {
      if (!skipped && v == heads[k]) {
        skipped = true;
        continue;
      }
      arr.push_back(v);
    }
    do {
      visit(states[k], arr);
    } while (std::next_permutation(arr.begin() + 1, arr.end()));
  });
  return states;
}

}  // namespace auctionlab
