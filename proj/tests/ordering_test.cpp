#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "vgp/ordering.hpp"
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

TEST_CASE("maxmin order of three collinear points") {
  // centroid is x = 7/15; the middle point starts, then the farthest end,
  // then the remaining one
  vgp::PointList pts{{0.0, 0.0}, {0.4, 0.0}, {1.0, 0.0}};
  const auto order = vgp::maxmin_order(pts);
  REQUIRE(order.size() == 3);
  CHECK(order[0] == 1);
  CHECK(order[1] == 2);
  CHECK(order[2] == 0);
}

TEST_CASE("maxmin order of a single point") {
  vgp::PointList pts{{0.2, 0.9}};
  const auto order = vgp::maxmin_order(pts);
  REQUIRE(order.size() == 1);
  CHECK(order[0] == 0);
}

TEST_CASE("maxmin order is a permutation and the two implementations agree") {
  for (std::uint64_t seed : {81u, 82u, 83u}) {
    const auto pts = random_points(200, seed);
    const auto scan = vgp::detail::maxmin_order_scan(pts);
    const auto heap = vgp::detail::maxmin_order_heap(pts);
    REQUIRE(scan.size() == pts.size());
    REQUIRE(heap.size() == pts.size());
    for (std::size_t i = 0; i < scan.size(); ++i) CHECK(scan[i] == heap[i]);

    std::vector<int> seen(pts.size(), 0);
    for (auto i : scan) ++seen[i];
    for (int s : seen) CHECK(s == 1);
  }
}

TEST_CASE("every maxmin prefix separation dominates later additions") {
  // the point added at step t is the active point farthest from the
  // prefix, so the min distance from order[t] to the prefix is
  // non-increasing in t
  const auto pts = random_points(150, 84);
  const auto order = vgp::maxmin_order(pts);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t < order.size(); ++t) {
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < t; ++s)
      dmin = std::min(dmin, vgp::distance(pts[order[s]], pts[order[t]]));
    CHECK(dmin <= prev * (1.0 + 1e-12));
    prev = dmin;
  }
}

TEST_CASE("apply_permutation reorders values by the given order") {
  std::vector<double> values{10.0, 11.0, 12.0, 13.0};
  std::vector<int> order{2, 0, 3, 1};
  const auto out = vgp::apply_permutation(values, order);
  REQUIRE(out.size() == 4);
  CHECK(out[0] == 12.0);
  CHECK(out[1] == 10.0);
  CHECK(out[2] == 13.0);
  CHECK(out[3] == 11.0);
}

TEST_CASE("neighbor sets with a large budget keep the whole history") {
  const auto pts = random_points(40, 85);
  vgp::NeighborSets sets(pts, 64);
  CHECK(sets.count(0) == 0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    REQUIRE(sets.count(i) == i);
    // ascending and exactly 0..i-1
    for (std::size_t k = 0; k < i; ++k) CHECK(sets.begin(i)[k] == static_cast<int>(k));
  }
}

TEST_CASE("neighbor sets of collinear points pick the nearest predecessor") {
  vgp::PointList pts{{0.0, 0.0}, {1.0, 0.0}, {0.6, 0.0}, {0.1, 0.0}};
  vgp::NeighborSets sets(pts, 1);
  CHECK(sets.count(0) == 0);
  REQUIRE(sets.count(1) == 1);
  CHECK(sets.begin(1)[0] == 0);
  REQUIRE(sets.count(2) == 1);
  CHECK(sets.begin(2)[0] == 1);  // 0.6 is nearer to 1.0 than to 0.0
  REQUIRE(sets.count(3) == 1);
  CHECK(sets.begin(3)[0] == 0);
}

TEST_CASE("neighbor sets agree with brute force") {
  const auto pts = random_points(300, 86);
  const int m = 10;
  vgp::NeighborSets sets(pts, m);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    // brute force: the m nearest among indices < i, tie by smaller index
    std::vector<int> prior(i);
    for (std::size_t j = 0; j < i; ++j) prior[j] = static_cast<int>(j);
    std::sort(prior.begin(), prior.end(), [&](int a, int b) {
      const double da = vgp::squared_distance(pts[a], pts[i]);
      const double db = vgp::squared_distance(pts[b], pts[i]);
      return da != db ? da < db : a < b;
    });
    prior.resize(std::min<std::size_t>(m, i));
    std::sort(prior.begin(), prior.end());

    REQUIRE(sets.count(i) == prior.size());
    for (std::size_t k = 0; k < prior.size(); ++k) CHECK(sets.begin(i)[k] == prior[k]);
  }
}

TEST_CASE("neighbor sets with a zero budget are all empty") {
  const auto pts = random_points(20, 87);
  vgp::NeighborSets sets(pts, 0);
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(sets.count(i) == 0);
}
