#pragma once

#include <cstddef>
#include <vector>

namespace vgp {

// Row-major dense matrix.  Small and self-contained; sized for the dense
// work this library actually does (conditioning blocks, subsample
// covariances), not for general linear algebra.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Lower-triangular Cholesky factor L with A = L L^T.
class CholeskyFactor {
 public:
  explicit CholeskyFactor(DenseMatrix l) : l_(std::move(l)) {}

  std::size_t dim() const { return l_.rows(); }
  const DenseMatrix& matrix() const { return l_; }

  // Solve L x = b in place.
  void forward_solve(std::vector<double>& b) const;
  // Solve L^T x = b in place.
  void backward_solve(std::vector<double>& b) const;
  // Solve A x = b, returning a new vector.
  std::vector<double> solve(std::vector<double> b) const;
  // log det A = 2 sum log L_ii.
  double log_det() const;

 private:
  DenseMatrix l_;
};

// Factor a symmetric positive definite matrix; only the lower triangle of
// `a` is read.  Throws NotPositiveDefinite with the failing pivot index.
CholeskyFactor cholesky(const DenseMatrix& a);

// y = A x.
std::vector<double> matvec(const DenseMatrix& a, const std::vector<double>& x);

// y = A^T x.
std::vector<double> matvec_transposed(const DenseMatrix& a, const std::vector<double>& x);

// C = A^T A for a tall matrix A (result is cols x cols, symmetric).
DenseMatrix gram(const DenseMatrix& a);

// Solve the least squares problem min ||y - X b|| via normal equations
// with a Cholesky factorization of X^T X.
std::vector<double> least_squares(const DenseMatrix& x, const std::vector<double>& y);

// Dot product and Euclidean norm helpers.
double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);

// Inverse of a symmetric positive definite matrix via its Cholesky factor.
DenseMatrix spd_inverse(const DenseMatrix& a);

// Allocation-free kernels on raw row-major buffers, for hot loops working
// on small conditioning blocks.

// Overwrite the lower triangle of the dim x dim buffer with its Cholesky
// factor; entries above the diagonal are ignored.
void cholesky_in_place(double* a, std::size_t dim);

// Same, but the final pivot (a conditional variance in sequential
// factorizations) is raised to `last_pivot_floor` before its square root,
// guarding near-duplicate sites.  Returns the unfloored final pivot.
// A nonpositive pivot still throws.
double cholesky_in_place_floored(double* a, std::size_t dim, double last_pivot_floor);

// Solve L b' = b in place against a lower-triangular row-major factor.
void forward_solve_in_place(const double* l, std::size_t dim, double* b);

}  // namespace vgp
