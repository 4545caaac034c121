#include <cmath>
#include <vector>

#include "doctest.h"
#include "vgp/rng.hpp"

TEST_CASE("identical seed and stream reproduce the sequence exactly") {
  vgp::RandomStream a(42, 3);
  vgp::RandomStream b(42, 3);
  for (int i = 0; i < 200; ++i) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.normal() == b.normal());
    CHECK(a.below(1000) == b.below(1000));
  }
}

TEST_CASE("different stream ids give different sequences") {
  vgp::RandomStream a(42, 0);
  vgp::RandomStream b(42, 1);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += a.engine()() == b.engine()();
  CHECK(same == 0);
}

TEST_CASE("different seeds give different sequences") {
  vgp::RandomStream a(1, 0);
  vgp::RandomStream b(2, 0);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += a.engine()() == b.engine()();
  CHECK(same == 0);
}

TEST_CASE("uniform stays in the half-open unit interval") {
  vgp::RandomStream stream(7, 0);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = stream.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo < 0.001);
  CHECK(hi > 0.999);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("ranged uniform respects its bounds") {
  vgp::RandomStream stream(7, 1);
  for (int i = 0; i < 1000; ++i) {
    const double u = stream.uniform(-2.0, 5.0);
    CHECK(u >= -2.0);
    CHECK(u < 5.0);
  }
}

TEST_CASE("normal draws have the right first two moments") {
  vgp::RandomStream stream(11, 0);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = stream.normal();
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("below covers its full range without bias toward the low end") {
  vgp::RandomStream stream(13, 0);
  std::vector<int> counts(10, 0);
  for (int i = 0; i < 100000; ++i) {
    const auto v = stream.below(10);
    REQUIRE(v < 10);
    ++counts[v];
  }
  for (int c : counts) CHECK(c > 9000);
}
