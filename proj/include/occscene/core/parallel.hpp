// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace occscene {

/// Static-chunk parallel loop. Each worker owns a disjoint index range, so
/// callers that write disjoint outputs per index stay deterministic for any
/// thread count. threads <= 1 runs inline.
inline void parallel_for(std::int64_t begin, std::int64_t end,
                         const std::function<void(std::int64_t)>& fn, int threads = 1) {
  const std::int64_t n = end - begin;
  if (n <= 0) return;
  if (threads <= 1 || n == 1) {
    for (std::int64_t i = begin; i < end; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(std::min<std::int64_t>(threads, n));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = begin + w * chunk;
    const std::int64_t hi = std::min<std::int64_t>(lo + chunk, end);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::int64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace occscene
