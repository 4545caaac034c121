#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "vgp/parallel.hpp"

TEST_CASE("parallel_map_reduce sums a range correctly at any worker count") {
  const std::size_t n = 100001;
  for (int workers : {1, 2, 4, 7}) {
    auto total = vgp::parallel_map_reduce<long long>(
        n, 128, workers, 0,
        [](std::size_t b, std::size_t e) {
          long long s = 0;
          for (std::size_t i = b; i < e; ++i) s += static_cast<long long>(i);
          return s;
        },
        [](long long a, long long b) { return a + b; });
    CHECK(total == static_cast<long long>(n) * (n - 1) / 2);
  }
}

TEST_CASE("floating-point reduction is bit-identical across worker counts") {
  // chunk boundaries depend only on n and chunk_size, and partials are
  // combined in chunk order, so even a non-associative reduction agrees
  const std::size_t n = 54321;
  auto run = [&](int workers) {
    return vgp::parallel_map_reduce<double>(
        n, 100, workers, 0.0,
        [](std::size_t b, std::size_t e) {
          double s = 0.0;
          for (std::size_t i = b; i < e; ++i) s += 1.0 / (1.0 + static_cast<double>(i));
          return s;
        },
        [](double a, double b) { return a + b; });
  };
  const double serial = run(1);
  for (int workers : {2, 3, 8}) CHECK(run(workers) == serial);
}

TEST_CASE("parallel_for touches every index exactly once") {
  const std::size_t n = 1000;
  std::vector<int> hits(n, 0);
  vgp::parallel_for(n, 7, 4, [&](std::size_t i) { ++hits[i]; });
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("exceptions thrown by a worker propagate to the caller") {
  CHECK_THROWS_WITH(vgp::parallel_for(100, 1, 4,
                                      [](std::size_t i) {
                                        if (i == 37) throw std::runtime_error("index 37 broke");
                                      }),
                    "index 37 broke");
}

TEST_CASE("resolve_workers prefers the explicit request over the environment") {
  setenv("VGP_WORKERS", "3", 1);
  CHECK(vgp::resolve_workers(5) == 5);
  CHECK(vgp::resolve_workers(0) == 3);
  setenv("VGP_WORKERS", "junk", 1);
  CHECK(vgp::resolve_workers(0) >= 1);
  unsetenv("VGP_WORKERS");
  CHECK(vgp::resolve_workers(0) >= 1);
}

TEST_CASE("empty range returns the initial value") {
  auto v = vgp::parallel_map_reduce<int>(
      0, 16, 4, -7, [](std::size_t, std::size_t) { return 0; },
      [](int a, int b) { return a + b; });
  CHECK(v == -7);
}
