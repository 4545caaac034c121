#include <cmath>
#include <vector>

#include "doctest.h"
#include "vgp/bessel.hpp"
#include "vgp/errors.hpp"

namespace {

// Independent check: integral representation
//   K_v(x) = int_0^inf exp(-x cosh t) cosh(v t) dt,
// composite Simpson on [0, T] with T pushed far enough that the truncated
// tail is negligible next to the integral itself.
double bessel_k_by_quadrature(double order, double x) {
  double t_end = 1.0;
  while (x * std::cosh(t_end) - order * t_end < 64.0) t_end += 0.5;
  const int panels = 40000;
  const double h = t_end / panels;
  auto f = [&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(order * t); };
  double sum = f(0.0) + f(t_end);
  for (int i = 1; i < panels; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("bessel_k matches the integral representation") {
  const double cases[][2] = {{0.5, 0.7}, {1.0, 1.0},  {1.5, 1.0}, {0.3, 0.5},
                             {2.5, 3.0}, {0.8, 0.25}, {1.3, 2.0}, {4.7, 6.0}};
  for (const auto& c : cases) {
    const double quad = bessel_k_by_quadrature(c[0], c[1]);
    CHECK(vgp::bessel_k(c[0], c[1]) == doctest::Approx(quad).epsilon(1e-11));
  }
}

TEST_CASE("bessel_k high-precision reference values") {
  // order, x, value
  const double refs[][3] = {
      {0.5, 1.0, 0.461068504447894558439575873876},
      {0.5, 2.0, 0.119937771968061447368036501637},
      {1.0, 1.0, 0.601907230197234574737540001536},
      {1.5, 1.0, 0.922137008895789116879151747751},
      {2.5, 3.0, 0.0840606319741173826528577316113},
      {0.3, 0.5, 0.976474124381787917082000198915},
      {4.7, 20.0, 9.8220936824303262022083198935e-10},
  };
  for (const auto& r : refs) {
    const double got = vgp::bessel_k(r[0], r[1]);
    CHECK(std::abs(got - r[2]) <= 1e-12 * std::abs(r[2]));
  }
}

TEST_CASE("bessel_k half-integer closed forms") {
  // K_{1/2}(x) = sqrt(pi / (2 x)) e^{-x}; K_{3/2} adds the (1 + 1/x) factor
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double base = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x);
    CHECK(vgp::bessel_k(0.5, x) == doctest::Approx(base).epsilon(1e-13));
    CHECK(vgp::bessel_k(1.5, x) == doctest::Approx(base * (1.0 + 1.0 / x)).epsilon(1e-13));
    CHECK(vgp::bessel_k(2.5, x) ==
          doctest::Approx(base * (1.0 + 3.0 / x + 3.0 / (x * x))).epsilon(1e-13));
  }
}

TEST_CASE("bessel_k is symmetric in the sign of the order") {
  for (double v : {0.3, 0.8, 1.4, 2.6}) {
    for (double x : {0.2, 1.0, 3.0}) {
      CHECK(vgp::bessel_k(-v, x) == doctest::Approx(vgp::bessel_k(v, x)).epsilon(1e-14));
    }
  }
}

TEST_CASE("scaled bessel_k decreases in x") {
  // K_v(x) ~ sqrt(pi / (2x)) e^{-x} (1 + O(1/x)), so e^x sqrt(x) K_v(x)
  // decreases toward sqrt(pi/2) from above for x past the order.
  for (double v : {0.5, 1.0, 1.7}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double x = 2.0; x <= 60.0; x += 0.5) {
      const double scaled = std::exp(x) * std::sqrt(x) * vgp::bessel_k(v, x);
      CHECK(scaled < prev);
      CHECK(scaled > std::sqrt(M_PI / 2.0));
      prev = scaled;
    }
  }
}

TEST_CASE("bessel_k satisfies the three-term recurrence") {
  // K_{v+1}(x) = K_{v-1}(x) + (2 v / x) K_v(x)
  for (double v : {0.6, 1.0, 1.9, 3.2}) {
    for (double x : {0.3, 0.9, 2.2, 7.0, 15.0}) {
      const double lhs = vgp::bessel_k(v + 1.0, x);
      const double rhs = vgp::bessel_k(v - 1.0, x) + (2.0 * v / x) * vgp::bessel_k(v, x);
      CHECK(std::abs(lhs - rhs) <= 1e-8 * std::abs(lhs));
    }
  }
}

TEST_CASE("bessel_k underflows to zero instead of subnormal garbage") {
  CHECK(vgp::bessel_k(1.0, 800.0) == 0.0);
  CHECK(vgp::bessel_k(0.5, 2000.0) == 0.0);
}

TEST_CASE("bessel_k rejects non-positive arguments") {
  CHECK_THROWS_AS(vgp::bessel_k(1.0, 0.0), vgp::Error);
  CHECK_THROWS_AS(vgp::bessel_k(1.0, -2.0), vgp::Error);
  CHECK_THROWS_AS(vgp::bessel_k(1.0, std::nan("")), vgp::Error);
}
