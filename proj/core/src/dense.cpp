#include "vgp/dense.hpp"

#include <cmath>
#include <cstddef>

#include "vgp/errors.hpp"

namespace vgp {

void CholeskyFactor::forward_solve(std::vector<double>& b) const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    const double* li = l_.row(i);
    for (std::size_t j = 0; j < i; ++j) s -= li[j] * b[j];
    b[i] = s / li[i];
  }
}

void CholeskyFactor::backward_solve(std::vector<double>& b) const {
  const std::size_t n = dim();
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= l_(j, i) * b[j];
    b[i] = s / l_(i, i);
  }
}

std::vector<double> CholeskyFactor::solve(std::vector<double> b) const {
  forward_solve(b);
  backward_solve(b);
  return b;
}

double CholeskyFactor::log_det() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) s += std::log(l_(i, i));
  return 2.0 * s;
}

CholeskyFactor cholesky(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  DenseMatrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double* li = l.row(i);
    for (std::size_t j = 0; j <= i; ++j) {
      double s = a(i, j);
      const double* lj = l.row(j);
      for (std::size_t k = 0; k < j; ++k) s -= li[k] * lj[k];
      if (i == j) {
        if (!(s > 0.0)) throw NotPositiveDefinite(i, s);
        li[i] = std::sqrt(s);
      } else {
        li[j] = s / lj[j];
      }
    }
  }
  return CholeskyFactor(std::move(l));
}

std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += ai[j] * x[j];
    y[i] = s;
  }
  return y;
}

std::vector<double> matvec_transposed(const DenseMatrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) y[j] += ai[j] * x[i];
  }
  return y;
}

DenseMatrix gram(const DenseMatrix& a) {
  const std::size_t p = a.cols();
  DenseMatrix g(p, p);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t k = 0; k <= j; ++k) g(j, k) += ai[j] * ai[k];
  }
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t k = j + 1; k < p; ++k) g(j, k) = g(k, j);
  return g;
}

std::vector<double> least_squares(const DenseMatrix& x, const std::vector<double>& y) {
  CholeskyFactor f = cholesky(gram(x));
  return f.solve(matvec_transposed(x, y));
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

namespace {

// Both rows are contiguous; four accumulators keep the reduction off the
// fused multiply-add latency chain.
inline double row_dot(const double* x, const double* y, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    s0 += x[k] * y[k];
    s1 += x[k + 1] * y[k + 1];
    s2 += x[k + 2] * y[k + 2];
    s3 += x[k + 3] * y[k + 3];
  }
  for (; k < n; ++k) s0 += x[k] * y[k];
  return (s0 + s1) + (s2 + s3);
}

}  // namespace

void cholesky_in_place(double* a, std::size_t dim) {
  for (std::size_t i = 0; i < dim; ++i) {
    double* ai = a + i * dim;
    for (std::size_t j = 0; j <= i; ++j) {
      const double* aj = a + j * dim;
      const double s = ai[j] - row_dot(ai, aj, j);
      if (i == j) {
        if (!(s > 0.0)) throw NotPositiveDefinite(i, s);
        ai[i] = std::sqrt(s);
      } else {
        ai[j] = s / aj[j];
      }
    }
  }
}

double cholesky_in_place_floored(double* a, std::size_t dim, double last_pivot_floor) {
  for (std::size_t i = 0; i < dim; ++i) {
    double* ai = a + i * dim;
    for (std::size_t j = 0; j <= i; ++j) {
      const double* aj = a + j * dim;
      double s = ai[j] - row_dot(ai, aj, j);
      if (i == j) {
        if (!(s > 0.0)) throw NotPositiveDefinite(i, s);
        if (i == dim - 1) {
          const double floored = s < last_pivot_floor ? last_pivot_floor : s;
          ai[i] = std::sqrt(floored);
          return s;
        }
        ai[i] = std::sqrt(s);
      } else {
        ai[j] = s / aj[j];
      }
    }
  }
  return 0.0;  // dim == 0
}

void forward_solve_in_place(const double* l, std::size_t dim, double* b) {
  for (std::size_t i = 0; i < dim; ++i) {
    const double* li = l + i * dim;
    b[i] = (b[i] - row_dot(li, b, i)) / li[i];
  }
}

DenseMatrix spd_inverse(const DenseMatrix& a) {
  const std::size_t n = a.rows();
  CholeskyFactor f = cholesky(a);
  DenseMatrix inv(n, n);
  std::vector<double> e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e.assign(n, 0.0);
    e[j] = 1.0;
    std::vector<double> col = f.solve(std::move(e));
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

}  // namespace vgp
