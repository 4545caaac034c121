#include <cmath>
#include <utility>

#include "vgp/errors.hpp"
#include "vgp/likelihood.hpp"
#include "vgp/normal.hpp"

namespace vgp {

ExactModel::ExactModel(Dataset data, DenseMatrix design, std::size_t size_guard)
    : data_(std::move(data)), design_(std::move(design)) {
  if (data_.size() > size_guard)
    throw SizeGuardError("dense likelihood", data_.size(), size_guard);
  if (design_.rows() != 0 && design_.rows() != data_.size())
    throw Error("design row count does not match observation count");
  if (data_.points.size() != data_.values.size())
    throw Error("point and value counts differ");
}

ProfiledLogLik ExactModel::evaluate(const MaternParams& p) const {
  const std::size_t n = data_.size();
  const std::size_t ncol = design_.cols();
  const CholeskyFactor chol = cholesky(covariance_matrix(data_.points, p));

  std::vector<double> wy = data_.values;
  chol.forward_solve(wy);

  ProfiledLogLik out;
  double ssr;
  if (ncol == 0) {
    ssr = dot(wy, wy);
  } else {
    DenseMatrix wx(n, ncol);
    std::vector<double> col(n);
    for (std::size_t j = 0; j < ncol; ++j) {
      for (std::size_t i = 0; i < n; ++i) col[i] = design_(i, j);
      chol.forward_solve(col);
      for (std::size_t i = 0; i < n; ++i) wx(i, j) = col[i];
    }
    out.beta = least_squares(wx, wy);
    out.beta_precision = gram(wx);
    // residual sum of squares of the whitened regression
    ssr = dot(wy, wy) - dot(out.beta, matvec_transposed(wx, wy));
  }
  out.log_lik = -0.5 * n * kLog2Pi - 0.5 * chol.log_det() - 0.5 * ssr;
  return out;
}

std::vector<double> ExactModel::component_log_liks(const MaternParams& p,
                                                   const std::vector<double>& beta) const {
  const std::size_t n = data_.size();
  const CholeskyFactor chol = cholesky(covariance_matrix(data_.points, p));

  std::vector<double> resid = data_.values;
  if (!beta.empty()) {
    const std::vector<double> trend = matvec(design_, beta);
    for (std::size_t i = 0; i < n; ++i) resid[i] -= trend[i];
  }
  chol.forward_solve(resid);

  // sequential factorization: observation i conditioned on all before it
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    terms[i] = -0.5 * kLog2Pi - std::log(chol.matrix()(i, i)) - 0.5 * resid[i] * resid[i];
  }
  return terms;
}

}  // namespace vgp
