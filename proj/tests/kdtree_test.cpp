#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "vgp/kdtree.hpp"
#include "vgp/point_set.hpp"
#include "vgp/rng.hpp"

namespace {

vgp::PointList random_points(std::size_t n, std::uint64_t seed) {
  vgp::RandomStream stream(seed, 0);
  vgp::PointList pts(n);
  for (auto& p : pts) p = {stream.uniform(), stream.uniform()};
  return pts;
}

// brute-force k nearest with the same (distance, index) tie rule
std::vector<int> brute_nearest(const vgp::PointList& pts, vgp::Point q, std::size_t k) {
  std::vector<int> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double da = vgp::squared_distance(pts[a], q);
    const double db = vgp::squared_distance(pts[b], q);
    return da != db ? da < db : a < b;
  });
  if (idx.size() > k) idx.resize(k);
  return idx;
}

}  // namespace

TEST_CASE("single-point tree") {
  vgp::PointList pts{{0.3, 0.4}};
  vgp::KdTree tree(pts);
  const auto got = tree.nearest({0.9, 0.9}, 5);
  REQUIRE(got.size() == 1);
  CHECK(got[0] == 0);
}

TEST_CASE("nearest corner of the unit square") {
  vgp::PointList pts{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
  vgp::KdTree tree(pts);
  const auto got = tree.nearest({0.1, 0.1}, 1);
  REQUIRE(got.size() == 1);
  CHECK(got[0] == 0);
  const auto all = tree.nearest({0.1, 0.1}, 4);
  REQUIRE(all.size() == 4);
  CHECK(all[0] == 0);
  CHECK(all[3] == 3);
}

TEST_CASE("nearest agrees with brute force on a random cloud") {
  const auto pts = random_points(500, 71);
  vgp::KdTree tree(pts);
  vgp::RandomStream stream(72, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const vgp::Point q{stream.uniform(), stream.uniform()};
    const auto got = tree.nearest(q, 20);
    const auto want = brute_nearest(pts, q, 20);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
  }
}

TEST_CASE("duplicate points break ties by index") {
  vgp::PointList pts{{0.5, 0.5}, {0.5, 0.5}, {0.5, 0.5}, {0.2, 0.2}};
  vgp::KdTree tree(pts);
  const auto got = tree.nearest({0.5, 0.5}, 3);
  REQUIRE(got.size() == 3);
  CHECK(got[0] == 0);
  CHECK(got[1] == 1);
  CHECK(got[2] == 2);
}

TEST_CASE("within_radius agrees with brute force") {
  const auto pts = random_points(400, 73);
  vgp::KdTree tree(pts);
  const vgp::Point q{0.4, 0.6};
  const double radius = 0.15;
  auto got = tree.within_radius(q, radius);
  std::sort(got.begin(), got.end());
  std::vector<int> want;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (vgp::distance(pts[i], q) <= radius) want.push_back(static_cast<int>(i));
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);
  CHECK(tree.count_within_radius(q, radius) == want.size());
}

TEST_CASE("within_box includes its boundary and agrees with brute force") {
  const auto pts = random_points(300, 74);
  vgp::KdTree tree(pts);
  const vgp::Point q{0.5, 0.5};
  const double half = 0.2;
  auto got = tree.within_box(q, half);
  std::sort(got.begin(), got.end());
  std::vector<int> want;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::abs(pts[i].x - q.x) <= half && std::abs(pts[i].y - q.y) <= half)
      want.push_back(static_cast<int>(i));
  }
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == want[i]);

  // exact boundary point counts as inside
  vgp::PointList edge{{0.0, 0.0}, {0.2, 0.0}};
  vgp::KdTree etree(edge);
  CHECK(etree.within_box({0.0, 0.0}, 0.2).size() == 2);
}

TEST_CASE("activation ranks restrict queries to earlier activations") {
  const auto pts = random_points(200, 75);
  vgp::KdTree tree(pts);
  tree.reset_activation();
  CHECK(tree.active_count() == 0);
  // activate the first hundred points in a scrambled order
  std::vector<int> order(100);
  for (std::size_t i = 0; i < 100; ++i) order[i] = static_cast<int>((i * 37) % 100);
  for (auto i : order) tree.activate(i);
  CHECK(tree.active_count() == 100);

  const vgp::Point q{0.3, 0.3};
  const auto got = tree.nearest(q, 10, tree.active_count());
  // brute force against the activated subset only
  vgp::PointList active(pts.begin(), pts.begin() + 100);
  const auto sub = brute_nearest(active, q, 10);
  REQUIRE(got.size() == sub.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == sub[i]);

  // restricting to the first five activations honors activation order
  const auto first5 = tree.nearest(q, 100, 5);
  CHECK(first5.size() == 5);
  for (auto idx : first5) {
    const auto pos = std::find(order.begin(), order.end(), idx) - order.begin();
    CHECK(pos < 5);
  }
}

TEST_CASE("k larger than the point count returns everything sorted") {
  const auto pts = random_points(30, 76);
  vgp::KdTree tree(pts);
  const auto got = tree.nearest({0.5, 0.5}, 100);
  CHECK(got.size() == 30);
  for (std::size_t i = 1; i < got.size(); ++i) {
    CHECK(vgp::squared_distance(pts[got[i - 1]], {0.5, 0.5}) <=
          vgp::squared_distance(pts[got[i]], {0.5, 0.5}));
  }
}
