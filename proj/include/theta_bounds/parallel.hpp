#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace theta_bounds {

// Worker count: THETA_BOUNDS_THREADS caps it, hardware concurrency is the
// default.  Always at least 1.
inline unsigned thread_budget() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("THETA_BOUNDS_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return std::min<unsigned>(hw * 4, static_cast<unsigned>(v));
  }
  return hw;
}

// Runs body(i) for i in [0, n).  Writers must target disjoint slots (index i);
// result assembly is then deterministic regardless of the thread count.
template <class F>
void parallel_for(std::size_t n, F&& body) {
  unsigned workers = std::min<std::size_t>(thread_budget(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace theta_bounds
