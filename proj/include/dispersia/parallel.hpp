#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace dispersia {

// Thread cap: DISPERSIA_THREADS if set, hardware concurrency otherwise.
inline int thread_count() {
  if (const char* env = std::getenv("DISPERSIA_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Static block partition so that the work assignment (and hence any
// per-block deterministic reduction order) does not depend on timing.
inline void parallel_for(long long begin, long long end,
                         const std::function<void(long long, long long)>& body) {
  long long total = end - begin;
  if (total <= 0) return;
  int workers = std::min<long long>(thread_count(), total);
  if (workers <= 1) {
    body(begin, end);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  long long chunk = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    long long lo = begin + w * chunk;
    long long hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace dispersia
