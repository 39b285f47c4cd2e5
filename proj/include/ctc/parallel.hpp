#pragma once

#include <algorithm>
#include <functional>
#include <thread>
#include <vector>

#include "ctc/types.hpp"

namespace ctc {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Static chunking of [0, n) over `workers` threads. fn(worker, lo, hi) runs
/// on disjoint ranges; callers own any merging, which keeps results
/// independent of the worker count.
inline void parallel_chunks(Index n, int workers,
                            const std::function<void(int, Index, Index)>& fn) {
  if (n <= 0) return;
  if (workers < 1) workers = 1;
  if (static_cast<Index>(workers) > n) workers = static_cast<int>(n);
  if (workers == 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  const Index chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const Index lo = static_cast<Index>(w) * chunk;
    const Index hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, w, lo, hi] { fn(w, lo, hi); });
  }
  for (auto& t : pool) t.join();
}

} // namespace ctc
