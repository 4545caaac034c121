#include <vector>

#include "doctest.h"
#include "vgp/dataset.hpp"
#include "vgp/errors.hpp"

TEST_CASE("design matrix shapes per trend kind") {
  vgp::Dataset data;
  data.points = {{0.0, 0.0}, {1.0, 2.0}};
  data.values = {5.0, 6.0};

  const auto none = vgp::make_design(data.points, vgp::TrendKind::none);
  CHECK(none.rows() == 2);
  CHECK(none.cols() == 0);

  const auto constant = vgp::make_design(data.points, vgp::TrendKind::constant);
  CHECK(constant.cols() == 1);
  CHECK(constant(0, 0) == 1.0);
  CHECK(constant(1, 0) == 1.0);

  const auto linear = vgp::make_design(data.points, vgp::TrendKind::linear);
  REQUIRE(linear.cols() == 3);
  CHECK(linear(0, 0) == 1.0);
  CHECK(linear(0, 1) == 0.0);
  CHECK(linear(0, 2) == 0.0);
  CHECK(linear(1, 0) == 1.0);
  CHECK(linear(1, 1) == 1.0);
  CHECK(linear(1, 2) == 2.0);
}

TEST_CASE("trend kind names round-trip and bad names are rejected") {
  for (auto kind : {vgp::TrendKind::none, vgp::TrendKind::constant, vgp::TrendKind::linear}) {
    CHECK(vgp::trend_kind_from_string(vgp::to_string(kind)) == kind);
  }
  CHECK_THROWS_AS(vgp::trend_kind_from_string("quadratic"), vgp::InputError);
}

TEST_CASE("fit_trend recovers an exact linear surface") {
  vgp::Dataset data;
  for (int i = 0; i < 7; ++i) {
    const double x = 0.13 * i;
    const double y = 0.09 * (6 - i) + 0.02 * i * i;
    data.points.push_back({x, y});
    data.values.push_back(2.0 + 3.0 * x - 1.5 * y);
  }
  const auto fit = vgp::fit_trend(data.points, data.values, vgp::TrendKind::linear);
  REQUIRE(fit.coef.size() == 3);
  CHECK(fit.coef[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.coef[1] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fit.coef[2] == doctest::Approx(-1.5).epsilon(1e-10));

  const auto vals = vgp::trend_values(data.points, fit);
  for (std::size_t i = 0; i < data.size(); ++i) {
    CHECK(vals[i] == doctest::Approx(data.values[i]).epsilon(1e-10));
  }
}

TEST_CASE("a zero-mean trend contributes nothing") {
  vgp::Dataset data;
  data.points = {{0.1, 0.2}, {0.3, 0.4}, {0.5, 0.1}};
  data.values = {1.0, -1.0, 0.5};
  const auto fit = vgp::fit_trend(data.points, data.values, vgp::TrendKind::none);
  CHECK(fit.coef.empty());
  const auto vals = vgp::trend_values(data.points, fit);
  for (double v : vals) CHECK(v == 0.0);
}
