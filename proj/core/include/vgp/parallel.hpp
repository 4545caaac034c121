#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace vgp {

// Worker count resolution: explicit request wins, then the VGP_WORKERS
// environment variable, then hardware concurrency.
inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("VGP_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Deterministic parallel map-reduce over [0, n).
//
// The range is split into fixed-size chunks whose boundaries depend only on
// n and chunk_size, never on the worker count.  Each chunk produces one
// partial via `map(chunk_begin, chunk_end)`; partials are stored by chunk
// index and combined sequentially in chunk order with `combine`, so the
// result is bit-identical for any number of workers.
template <typename Partial, typename MapFn, typename CombineFn>
Partial parallel_map_reduce(std::size_t n, std::size_t chunk_size, int workers,
                            Partial init, MapFn map, CombineFn combine) {
  if (chunk_size == 0) chunk_size = 1;
  const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<Partial> partials(n_chunks);

  workers = resolve_workers(workers);
  if (workers <= 1 || n_chunks <= 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) {
      std::size_t b = c * chunk_size;
      std::size_t e = std::min(n, b + chunk_size);
      partials[c] = map(b, e);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      try {
        for (;;) {
          std::size_t c = next.fetch_add(1);
          if (c >= n_chunks) return;
          std::size_t b = c * chunk_size;
          std::size_t e = std::min(n, b + chunk_size);
          partials[c] = map(b, e);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n_chunks);  // stop all workers
      }
    };
    std::vector<std::thread> pool;
    int n_threads = static_cast<int>(std::min<std::size_t>(workers, n_chunks));
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  Partial acc = init;
  for (std::size_t c = 0; c < n_chunks; ++c) acc = combine(acc, partials[c]);
  return acc;
}

// Deterministic parallel for over [0, n): like parallel_map_reduce but the
// body writes results into caller-owned slots, so no combine step is needed.
// Chunking is fixed the same way; any worker count produces the same writes.
template <typename BodyFn>
void parallel_for(std::size_t n, std::size_t chunk_size, int workers, BodyFn body) {
  parallel_map_reduce<int>(
      n, chunk_size, workers, 0,
      [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) body(i);
        return 0;
      },
      [](int a, int) { return a; });
}

}  // namespace vgp
