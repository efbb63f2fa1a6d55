#include "heraldsim/threads.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace heraldsim {

std::size_t thread_cap() {
  std::size_t cap = 0;
  if (const char* env = std::getenv("HERALD_SIM_THREADS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0') cap = static_cast<std::size_t>(parsed);
  }
  if (cap == 0) {
    cap = std::thread::hardware_concurrency();
    if (cap == 0) cap = 1;
  }
  return cap;
}

void parallel_for_indexed(std::size_t count, std::size_t max_workers,
                          const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  std::size_t workers = max_workers == 0 ? thread_cap() : max_workers;
  workers = std::min(workers, count);

  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      fn(i);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

} // namespace heraldsim
