#include <cmath>

#include "doctest.h"
#include "vgp/errors.hpp"
#include "vgp/normal.hpp"

TEST_CASE("norm_cdf reference points") {
  CHECK(vgp::norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(vgp::norm_cdf(1.0) == doctest::Approx(0.841344746068543).epsilon(1e-12));
  CHECK(vgp::norm_cdf(-1.959963984540054) == doctest::Approx(0.025).epsilon(1e-12));
  // complement symmetry
  for (double z : {0.3, 1.7, 4.2}) {
    CHECK(vgp::norm_cdf(z) + vgp::norm_cdf(-z) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("norm_quantile hits the classic two-sided point") {
  CHECK(std::abs(vgp::norm_quantile(0.975) - 1.95996398454005423552459443052) < 1e-12);
  CHECK(std::abs(vgp::norm_quantile(0.025) + 1.95996398454005423552459443052) < 1e-12);
  CHECK(vgp::norm_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("norm_quantile inverts norm_cdf") {
  for (double z = -5.0; z <= 5.0; z += 0.25) {
    CHECK(vgp::norm_quantile(vgp::norm_cdf(z)) == doctest::Approx(z).epsilon(1e-10));
  }
  CHECK_THROWS_AS(vgp::norm_quantile(0.0), vgp::Error);
  CHECK_THROWS_AS(vgp::norm_quantile(1.0), vgp::Error);
}

TEST_CASE("log_norm_cdf agrees with the direct log and stays finite deep in the tail") {
  for (double z = -9.5; z <= 5.0; z += 0.5) {
    CHECK(vgp::log_norm_cdf(z) == doctest::Approx(std::log(vgp::norm_cdf(z))).epsilon(1e-10));
  }
  // far past where norm_cdf underflows
  const double deep = vgp::log_norm_cdf(-40.0);
  CHECK(std::isfinite(deep));
  // leading term is -z^2/2
  CHECK(deep == doctest::Approx(-800.0).epsilon(1e-2));
  // monotone in z
  CHECK(vgp::log_norm_cdf(-41.0) < vgp::log_norm_cdf(-40.0));
}

TEST_CASE("norm_pdf matches the explicit formula") {
  for (double z : {0.0, 0.5, -2.0, 3.7}) {
    const double expect = std::exp(-0.5 * z * z) / vgp::kSqrt2Pi;
    CHECK(vgp::norm_pdf(z) == doctest::Approx(expect).epsilon(1e-15));
  }
}
