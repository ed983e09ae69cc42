#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace hypsob {

// Number of worker threads: HYPSOB_THREADS caps it, hardware concurrency is
// the default.
inline unsigned thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("HYPSOB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && v < 1024) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

// Deterministic parallel loop: results must be written to pre-sized slots.
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& body) {
  const unsigned workers = std::min<std::size_t>(thread_budget(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

} // namespace hypsob
