#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace skewlab {

// Determinism contract: work is cut into blocks whose boundaries depend only
// on the problem size, never on the thread count. Threads race for block
// indices; per-block outputs land in pre-sized slots and all reductions walk
// the slots in a fixed pairwise tree. Any thread count therefore produces
// bit-identical results.

int default_threads();
void set_default_threads(int n);

void parallel_blocks(std::int64_t nblocks, int threads,
                     const std::function<void(std::int64_t)>& body);

// Fixed-shape pairwise tree over the block results, independent of thread
// count (it only sees the vector).
template <class T, class Op>
T tree_reduce(std::vector<T> v, T identity, Op op) {
  if (v.empty()) return identity;
  while (v.size() > 1) {
    std::size_t half = (v.size() + 1) / 2;
    for (std::size_t i = 0; i + half < v.size(); ++i)
      v[i] = op(v[i], v[i + half]);
    v.resize(half);
  }
  return v[0];
}

template <class T, class Map, class Op>
T parallel_map_reduce(std::int64_t nblocks, int threads, T identity, Map map,
                      Op op) {
  std::vector<T> out(static_cast<std::size_t>(nblocks), identity);
  parallel_blocks(nblocks, threads,
                  [&](std::int64_t b) { out[static_cast<std::size_t>(b)] = map(b); });
  return tree_reduce(std::move(out), identity, op);
}

}  // namespace skewlab
