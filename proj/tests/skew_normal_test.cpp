#include <cmath>
#include <vector>

#include "doctest.h"
#include "vgp/errors.hpp"
#include "vgp/normal.hpp"
#include "vgp/rng.hpp"
#include "vgp/skew_normal.hpp"

TEST_CASE("owens_t special arguments") {
  CHECK(vgp::owens_t(1.3, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
  for (double a : {0.2, 1.0, 3.5}) {
    CHECK(vgp::owens_t(0.0, a) == doctest::Approx(std::atan(a) / (2.0 * M_PI)).epsilon(1e-12));
  }
  // T(h, 1) = Phi(h) (1 - Phi(h)) / 2
  for (double h : {0.0, 0.7, 2.1}) {
    const double phi = vgp::norm_cdf(h);
    CHECK(vgp::owens_t(h, 1.0) == doctest::Approx(0.5 * phi * (1.0 - phi)).epsilon(1e-10));
  }
  // even in h
  CHECK(vgp::owens_t(-1.2, 0.8) == doctest::Approx(vgp::owens_t(1.2, 0.8)).epsilon(1e-13));
}

TEST_CASE("sn_cdf reduces to the normal cdf at shape zero") {
  vgp::SkewNormalParams p;
  for (double x = -3.0; x <= 3.0; x += 0.5) {
    CHECK(vgp::sn_cdf(x, p) == doctest::Approx(vgp::norm_cdf(x)).epsilon(1e-12));
    CHECK(vgp::sn_pdf(x, p) == doctest::Approx(vgp::norm_pdf(x)).epsilon(1e-12));
  }
}

TEST_CASE("sn_quantile at shape zero is the normal quantile") {
  vgp::SkewNormalParams p;
  CHECK(std::abs(vgp::sn_quantile(0.975, p) - 1.95996398454005424) < 1e-8);
  p.location = 3.0;
  p.scale = 2.0;
  CHECK(vgp::sn_quantile(0.5, p) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(std::abs(vgp::sn_quantile(0.975, p) - (3.0 + 2.0 * 1.95996398454005424)) < 1e-7);
  CHECK(std::abs(vgp::sn_quantile(0.025, p) - (3.0 - 2.0 * 1.95996398454005424)) < 1e-7);
}

TEST_CASE("sn_quantile inverts sn_cdf and is monotone") {
  vgp::SkewNormalParams p{0.5, 1.3, 4.0};
  double prev = -1e300;
  for (double prob = 0.01; prob < 0.995; prob += 0.07) {
    const double q = vgp::sn_quantile(prob, p);
    CHECK(q > prev);
    prev = q;
    CHECK(vgp::sn_cdf(q, p) == doctest::Approx(prob).epsilon(1e-7));
  }
  CHECK_THROWS_AS(vgp::sn_quantile(0.0, p), vgp::Error);
}

TEST_CASE("sn_mean and sn_variance match the moment formulas") {
  vgp::SkewNormalParams p{2.0, 1.5, 3.0};
  const double delta = 3.0 / std::sqrt(10.0);
  const double expect_mean = 2.0 + 1.5 * delta * std::sqrt(2.0 / M_PI);
  const double expect_var = 1.5 * 1.5 * (1.0 - 2.0 * delta * delta / M_PI);
  CHECK(vgp::sn_mean(p) == doctest::Approx(expect_mean).epsilon(1e-12));
  CHECK(vgp::sn_variance(p) == doctest::Approx(expect_var).epsilon(1e-12));
}

TEST_CASE("sn_fit recovers a plain normal sample") {
  vgp::RandomStream stream(19, 0);
  std::vector<double> sample(100000);
  for (auto& v : sample) v = stream.normal();
  const auto fit = vgp::sn_fit(sample);
  CHECK(fit.converged);
  CHECK(std::abs(fit.params.location) < 0.05);
  CHECK(std::abs(fit.params.scale - 1.0) < 0.05);
  CHECK(std::abs(fit.params.shape) < 0.25);

  // translating the sample translates only the location
  std::vector<double> shifted = sample;
  for (auto& v : shifted) v += 7.0;
  const auto fit2 = vgp::sn_fit(shifted);
  CHECK(fit2.params.location == doctest::Approx(fit.params.location + 7.0).epsilon(1e-5));
  CHECK(fit2.params.scale == doctest::Approx(fit.params.scale).epsilon(1e-5));
  CHECK(fit2.params.shape == doctest::Approx(fit.params.shape).epsilon(1e-4));
}

TEST_CASE("sn_fit recovers a strongly skewed sample") {
  // If (Z1, Z2) are iid standard normal then
  // delta |Z1| + sqrt(1 - delta^2) Z2 is skew-normal with that delta.
  const double shape = 5.0;
  const double delta = shape / std::sqrt(1.0 + shape * shape);
  vgp::RandomStream stream(23, 0);
  std::vector<double> sample(100000);
  for (auto& v : sample) {
    v = delta * std::abs(stream.normal()) + std::sqrt(1.0 - delta * delta) * stream.normal();
  }
  const auto fit = vgp::sn_fit(sample);
  CHECK(fit.converged);
  // shape is the hard parameter; delta is the stable scale for closeness
  const double delta_hat = fit.params.shape / std::sqrt(1.0 + fit.params.shape * fit.params.shape);
  CHECK(delta_hat == doctest::Approx(delta).epsilon(0.05));
  CHECK(std::abs(fit.params.location) < 0.1);
  CHECK(std::abs(fit.params.scale - 1.0) < 0.1);
}

TEST_CASE("sn_fit refuses degenerate input") {
  std::vector<double> constant(200, 4.2);
  CHECK_THROWS_AS(vgp::sn_fit(constant), vgp::DegenerateSample);
  std::vector<double> tiny{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(vgp::sn_fit(tiny), vgp::DegenerateSample);
}
