#include "polar16/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace polar16 {

int default_thread_count() {
  if (const char* env = std::getenv("POLAR16_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

void parallel_for(int64_t count, int threads,
                  const std::function<void(int, int64_t)>& fn) {
  if (count <= 0) return;
  if (threads <= 0) threads = default_thread_count();
  if (threads == 1 || count == 1) {
    for (int64_t i = 0; i < count; ++i) fn(0, i);
    return;
  }
  std::atomic<int64_t> next{0};
  auto worker = [&](int id) {
    for (;;) {
      const int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      fn(id, i);
    }
  };
  std::vector<std::thread> pool;
  const int n = static_cast<int>(std::min<int64_t>(threads, count));
  pool.reserve(static_cast<size_t>(n - 1));
  for (int t = 1; t < n; ++t) pool.emplace_back(worker, t);
  worker(0);
  for (auto& th : pool) th.join();
}

}  // namespace polar16
