#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace cod {

/// Runs fn(begin, end) over a block partition of [0, count). Each index is
/// owned by exactly one block, so results are independent of scheduling.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  const std::size_t workers =
      threads <= 1 ? 1 : std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  if (workers == 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back(fn, begin, end);
  }
  for (auto& t : pool) t.join();
}

}  // namespace cod
