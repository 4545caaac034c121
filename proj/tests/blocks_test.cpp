#include <algorithm>
#include <vector>

#include "doctest.h"
#include "vgp/blocks.hpp"
#include "vgp/errors.hpp"
#include "vgp/point_set.hpp"
#include "vgp/rng.hpp"

namespace {

vgp::PointList random_points(std::size_t n, std::uint64_t seed) {
  vgp::RandomStream stream(seed, 0);
  vgp::PointList pts(n);
  for (auto& p : pts) p = {stream.uniform(), stream.uniform()};
  return pts;
}

}  // namespace

TEST_CASE("one block swallows everything") {
  const auto pts = random_points(50, 31);
  const auto part = vgp::voronoi_partition(pts, 1, 9);
  CHECK(part.n_blocks == 1);
  REQUIRE(part.blocks() == 1);
  CHECK(part.members[0].size() == 50);
  for (int a : part.assignment) CHECK(a == 0);
}

TEST_CASE("as many blocks as points puts each point alone") {
  const auto pts = random_points(12, 32);
  const auto part = vgp::voronoi_partition(pts, 12, 9);
  REQUIRE(part.blocks() == 12);
  std::size_t total = 0;
  for (const auto& m : part.members) {
    CHECK(m.size() == 1);
    total += m.size();
  }
  CHECK(total == 12);
}

TEST_CASE("every point lands in the block of its nearest center") {
  const auto pts = random_points(600, 33);
  const auto part = vgp::voronoi_partition(pts, 7, 41);
  REQUIRE(part.centers.size() == 7);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int best_block = -1;
    for (int b = 0; b < 7; ++b) {
      const double d = vgp::squared_distance(pts[i], pts[part.centers[b]]);
      if (d < best) {
        best = d;
        best_block = b;
      }
    }
    CHECK(part.assignment[i] == best_block);
  }
  // members lists match the assignment and stay ascending
  for (int b = 0; b < 7; ++b) {
    CHECK(std::is_sorted(part.members[b].begin(), part.members[b].end()));
    for (int i : part.members[b]) CHECK(part.assignment[i] == b);
  }
}

TEST_CASE("partitions are reproducible and seed-sensitive") {
  const auto pts = random_points(200, 34);
  const auto a = vgp::voronoi_partition(pts, 5, 100);
  const auto b = vgp::voronoi_partition(pts, 5, 100);
  CHECK(a.centers == b.centers);
  CHECK(a.assignment == b.assignment);
  const auto c = vgp::voronoi_partition(pts, 5, 101);
  CHECK(a.centers != c.centers);
}

TEST_CASE("coincident centers tie toward the smaller block id") {
  vgp::PointList pts{{0.5, 0.5}, {0.5, 0.5}, {0.9, 0.9}};
  const auto part = vgp::voronoi_partition(pts, 3, 7);
  // whichever blocks ended up with coincident centers, the shared points
  // must sit in the smaller id
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const int mine = part.assignment[i];
    const double d = vgp::squared_distance(pts[i], pts[part.centers[mine]]);
    for (int b = 0; b < mine; ++b) {
      CHECK(vgp::squared_distance(pts[i], pts[part.centers[b]]) > d - 1e-300);
      if (vgp::squared_distance(pts[i], pts[part.centers[b]]) == d) FAIL("tie went high");
    }
  }
}

TEST_CASE("invalid block counts are rejected") {
  const auto pts = random_points(10, 35);
  CHECK_THROWS_AS(vgp::voronoi_partition(pts, 0, 1), vgp::Error);
  CHECK_THROWS_AS(vgp::voronoi_partition(pts, 11, 1), vgp::Error);
}

TEST_CASE("default block count is one per five hundred points") {
  CHECK(vgp::default_block_count(1) == 1);
  CHECK(vgp::default_block_count(499) == 1);
  CHECK(vgp::default_block_count(500) == 1);
  CHECK(vgp::default_block_count(999) == 1);
  CHECK(vgp::default_block_count(1000) == 2);
  CHECK(vgp::default_block_count(5200) == 10);
}
