#include "skewlab/parallel.hpp"

#include <algorithm>
#include <cstdlib>

namespace skewlab {

namespace {
int g_threads = 0;  // 0 = resolve lazily
}

int default_threads() {
  if (g_threads > 0) return g_threads;
  if (const char* env = std::getenv("SKEWLAB_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return g_threads = std::min(n, 64);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return g_threads = int(std::clamp(hw, 1u, 8u));
}

void set_default_threads(int n) { g_threads = std::clamp(n, 1, 64); }

void parallel_blocks(std::int64_t nblocks, int threads,
                     const std::function<void(std::int64_t)>& body) {
  if (nblocks <= 0) return;
  if (threads <= 0) threads = default_threads();
  threads = int(std::min<std::int64_t>(threads, nblocks));
  if (threads == 1) {
    for (std::int64_t b = 0; b < nblocks; ++b) body(b);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr err;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (;;) {
      std::int64_t b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= nblocks || failed.load(std::memory_order_relaxed)) return;
      try {
        body(b);
      } catch (...) {
        if (!failed.exchange(true)) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace skewlab
