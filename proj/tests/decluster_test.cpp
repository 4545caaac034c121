#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "vgp/decluster.hpp"
#include "vgp/errors.hpp"
#include "vgp/point_set.hpp"
#include "vgp/rng.hpp"

TEST_CASE("two isolated points split the weight evenly") {
  vgp::PointList pts{{0.0, 0.0}, {1.0, 1.0}};
  const auto w = vgp::decluster_weights(pts, 0.1);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("a tight cluster shares weight that an isolated point keeps whole") {
  // three mutual neighbors get 1/3 raw weight each, the loner gets 1;
  // normalized: 1/6, 1/6, 1/6, 1/2
  vgp::PointList pts{{0.0, 0.0}, {0.01, 0.0}, {0.0, 0.01}, {1.0, 1.0}};
  const auto w = vgp::decluster_weights(pts, 0.05);
  REQUIRE(w.size() == 4);
  CHECK(w[0] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(w[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(w[3] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("weights always sum to one") {
  vgp::RandomStream stream(41, 0);
  vgp::PointList pts(300);
  for (auto& p : pts) p = {stream.uniform(), stream.uniform()};
  const auto w = vgp::decluster_weights(pts, 0.07);
  CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  for (double v : w) CHECK(v > 0.0);
}

TEST_CASE("relabeling the points relabels the weights") {
  vgp::RandomStream stream(42, 0);
  vgp::PointList pts(100);
  for (auto& p : pts) p = {stream.uniform(), stream.uniform()};
  const auto w = vgp::decluster_weights(pts, 0.1);

  vgp::PointList reversed(pts.rbegin(), pts.rend());
  const auto wr = vgp::decluster_weights(reversed, 0.1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(wr[pts.size() - 1 - i] == doctest::Approx(w[i]).epsilon(1e-14));
  }
}

TEST_CASE("weighted draws flatten a clustered pattern") {
  // 300 points crammed into a small disk plus 60 spread singletons; the
  // weighted subsample should pick singletons at far above their 1/6 head
  // count share
  vgp::RandomStream gen(43, 0);
  vgp::PointList pts;
  for (int i = 0; i < 300; ++i)
    pts.push_back({0.5 + 0.02 * gen.uniform(), 0.5 + 0.02 * gen.uniform()});
  for (int i = 0; i < 60; ++i) {
    // keep singletons away from the cluster
    double x = gen.uniform(), y = gen.uniform();
    while (std::abs(x - 0.5) < 0.2 && std::abs(y - 0.5) < 0.2) {
      x = gen.uniform();
      y = gen.uniform();
    }
    pts.push_back({x, y});
  }
  const auto w = vgp::decluster_weights(pts, 0.05);
  vgp::RandomStream stream(44, 0);
  const auto sub = vgp::weighted_subsample(w, 100, stream);
  int singles = 0;
  for (int i : sub) singles += i >= 300;
  CHECK(singles > 40);
}

TEST_CASE("subsampling everything returns every index") {
  std::vector<double> w{0.1, 0.4, 0.2, 0.3};
  vgp::RandomStream stream(45, 0);
  auto sub = vgp::weighted_subsample(w, 4, stream);
  std::sort(sub.begin(), sub.end());
  for (int i = 0; i < 4; ++i) CHECK(sub[i] == i);
}

TEST_CASE("a dominant weight is almost always drawn") {
  std::vector<double> w(100, 0.001 / 99.0);
  w[37] = 0.999;
  int hits = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    vgp::RandomStream stream(500 + rep, 0);
    const auto sub = vgp::weighted_subsample(w, 1, stream);
    hits += sub[0] == 37;
  }
  CHECK(hits > 9900);
}

TEST_CASE("subsample draws are distinct and reproducible") {
  vgp::RandomStream gen(46, 0);
  std::vector<double> w(500);
  for (auto& v : w) v = gen.uniform() + 0.01;
  vgp::RandomStream s1(47, 0), s2(47, 0);
  const auto a = vgp::weighted_subsample(w, 200, s1);
  const auto b = vgp::weighted_subsample(w, 200, s2);
  CHECK(a == b);
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
}

TEST_CASE("infeasible subsample requests are rejected") {
  std::vector<double> w{0.5, 0.5, 0.0};
  vgp::RandomStream stream(48, 0);
  CHECK_THROWS_AS(vgp::weighted_subsample(w, 3, stream), vgp::Error);
  std::vector<double> neg{0.5, -0.5};
  CHECK_THROWS_AS(vgp::weighted_subsample(neg, 1, stream), vgp::Error);
}
