#include <cmath>
#include <vector>

#include "doctest.h"
#include "vgp/dense.hpp"
#include "vgp/errors.hpp"
#include "vgp/rng.hpp"

namespace {

// cofactor-expansion determinant, fine for the tiny matrices used here
double det_by_cofactors(const vgp::DenseMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  double det = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    vgp::DenseMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    }
    const double sign = j % 2 ? -1.0 : 1.0;
    det += sign * a(0, j) * det_by_cofactors(minor);
  }
  return det;
}

vgp::DenseMatrix random_spd(std::size_t n, std::uint64_t seed) {
  vgp::RandomStream stream(seed, 0);
  vgp::DenseMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = stream.normal();
  vgp::DenseMatrix a = vgp::gram(b);  // b' b
  for (std::size_t i = 0; i < n; ++i) a(i, i) += 1.0 + static_cast<double>(n);
  return a;
}

}  // namespace

TEST_CASE("cholesky of a hand-worked 2x2") {
  vgp::DenseMatrix a(2, 2);
  a(0, 0) = 4.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 5.0;
  const auto f = vgp::cholesky(a);
  CHECK(f.matrix()(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f.matrix()(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f.matrix()(1, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f.log_det() == doctest::Approx(std::log(16.0)).epsilon(1e-14));
}

TEST_CASE("cholesky of the identity is the identity") {
  vgp::DenseMatrix a(4, 4);
  for (std::size_t i = 0; i < 4; ++i) a(i, i) = 1.0;
  const auto f = vgp::cholesky(a);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      CHECK(f.matrix()(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-15));
  CHECK(f.log_det() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("cholesky reports the failing pivot of an indefinite matrix") {
  vgp::DenseMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 1.0;
  try {
    vgp::cholesky(a);
    FAIL("expected NotPositiveDefinite");
  } catch (const vgp::NotPositiveDefinite& e) {
    CHECK(e.pivot() == 1);
    CHECK(e.pivot_value() == doctest::Approx(-3.0).epsilon(1e-12));
  }
}

TEST_CASE("reconstructing a from l l-transpose") {
  const auto a = random_spd(8, 91);
  const auto f = vgp::cholesky(a);
  const auto& l = f.matrix();
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k <= j; ++k) s += l(i, k) * l(j, k);
      CHECK(s == doctest::Approx(a(i, j)).epsilon(1e-12));
    }
  }
}

TEST_CASE("triangular solves on hand-worked systems") {
  vgp::DenseMatrix l(2, 2);
  l(0, 0) = 2.0;
  l(1, 0) = 1.0;
  l(1, 1) = 2.0;
  vgp::CholeskyFactor f(l);
  std::vector<double> y{2.0, 3.0};
  f.forward_solve(y);
  CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(y[1] == doctest::Approx(1.0).epsilon(1e-15));
  // full solve: l l' x = b
  const auto x = f.solve({2.0, 3.0});
  // l l' = [[4, 2], [2, 5]], inverse times (2, 3) = (1/4, 1/2)
  CHECK(x[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("solve agrees with an independent gauss-jordan inverse") {
  const std::size_t n = 5;
  const auto a = random_spd(n, 17);
  // gauss-jordan on [a | i]
  std::vector<std::vector<double>> aug(n, std::vector<double>(2 * n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a(i, j);
    aug[i][n + i] = 1.0;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
    std::swap(aug[col], aug[piv]);
    const double d = aug[col][col];
    for (auto& v : aug[col]) v /= d;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double m = aug[r][col];
      for (std::size_t c = 0; c < 2 * n; ++c) aug[r][c] -= m * aug[col][c];
    }
  }
  vgp::RandomStream stream(5, 0);
  std::vector<double> b(n);
  for (auto& v : b) v = stream.normal();
  const auto x = vgp::cholesky(a).solve(b);
  for (std::size_t i = 0; i < n; ++i) {
    double expect = 0.0;
    for (std::size_t j = 0; j < n; ++j) expect += aug[i][n + j] * b[j];
    CHECK(x[i] == doctest::Approx(expect).epsilon(1e-11));
  }
}

TEST_CASE("log_det matches the cofactor determinant") {
  vgp::DenseMatrix d(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  CHECK(vgp::cholesky(d).log_det() == doctest::Approx(std::log(36.0)).epsilon(1e-14));

  const auto a = random_spd(4, 33);
  CHECK(vgp::cholesky(a).log_det() ==
        doctest::Approx(std::log(det_by_cofactors(a))).epsilon(1e-11));
}

TEST_CASE("spd_inverse times the matrix is the identity") {
  const auto a = random_spd(6, 55);
  const auto inv = vgp::spd_inverse(a);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 6; ++k) s += inv(i, k) * a(k, j);
      CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("matvec and transposed matvec") {
  vgp::DenseMatrix a(2, 3);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(0, 2) = 3.0;
  a(1, 0) = 4.0;
  a(1, 1) = 5.0;
  a(1, 2) = 6.0;
  const auto y = vgp::matvec(a, {1.0, 1.0, 1.0});
  CHECK(y[0] == doctest::Approx(6.0));
  CHECK(y[1] == doctest::Approx(15.0));
  const auto z = vgp::matvec_transposed(a, {1.0, 1.0});
  CHECK(z[0] == doctest::Approx(5.0));
  CHECK(z[1] == doctest::Approx(7.0));
  CHECK(z[2] == doctest::Approx(9.0));
}

TEST_CASE("least_squares solves an exactly determined trend") {
  // y = 2 + 3 x - z over four observations
  vgp::DenseMatrix x(4, 3);
  std::vector<double> y(4);
  const double xs[4] = {0.0, 1.0, 2.0, -1.0};
  const double zs[4] = {0.0, 1.0, -1.0, 2.0};
  for (std::size_t i = 0; i < 4; ++i) {
    x(i, 0) = 1.0;
    x(i, 1) = xs[i];
    x(i, 2) = zs[i];
    y[i] = 2.0 + 3.0 * xs[i] - zs[i];
  }
  const auto beta = vgp::least_squares(x, y);
  CHECK(beta[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(beta[1] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(beta[2] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("floored in-place cholesky touches only the final pivot") {
  // 2x2 with an exactly singular trailing pivot
  std::vector<double> a{1.0, 1.0, 1.0, 1.0};
  const double unfloored = vgp::cholesky_in_place_floored(a.data(), 2, 1e-8);
  CHECK(unfloored == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(a[0] == doctest::Approx(1.0));
  CHECK(a[2] == doctest::Approx(1.0));
  CHECK(a[3] == doctest::Approx(1e-4).epsilon(1e-12));  // sqrt of the floor

  // a genuinely negative trailing pivot still throws
  std::vector<double> bad{1.0, 2.0, 2.0, 1.0};
  CHECK_THROWS_AS(vgp::cholesky_in_place_floored(bad.data(), 2, 1e-8),
                  vgp::NotPositiveDefinite);
}

TEST_CASE("dot and norm2 basics") {
  CHECK(vgp::dot({1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}) == doctest::Approx(32.0));
  CHECK(vgp::norm2({3.0, 4.0}) == doctest::Approx(5.0));
}
