#include <cmath>
#include <string>
#include <utility>

#include "vgp/errors.hpp"
#include "vgp/likelihood.hpp"
#include "vgp/normal.hpp"
#include "vgp/parallel.hpp"

namespace vgp {

namespace {

struct BlockAccum {
  double log_det = 0.0;
  double yty = 0.0;
  std::vector<double> xty;
  DenseMatrix xtx;
};

PointList gather_points(const PointList& points, const std::vector<int>& idx) {
  PointList out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(points[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace

BlockModel::BlockModel(Dataset data, DenseMatrix design, BlockPartition blocks,
                       Options options)
    : data_(std::move(data)), design_(std::move(design)), options_(options) {
  if (design_.rows() != 0 && design_.rows() != data_.size())
    throw Error("design row count does not match observation count");
  for (auto& members : blocks.members) {
    if (members.empty()) continue;
    if (members.size() > options_.max_block_size)
      throw SizeGuardError("block likelihood block", members.size(),
                           options_.max_block_size);
    groups_.push_back(std::move(members));
  }
  if (groups_.empty()) throw Error("block likelihood needs a nonempty partition");
}

ProfiledLogLik BlockModel::evaluate(const MaternParams& p) const {
  const std::size_t ncol = design_.cols();

  auto map = [&](std::size_t gb, std::size_t ge) {
    BlockAccum acc;
    acc.xty.assign(ncol, 0.0);
    acc.xtx = DenseMatrix(ncol, ncol);
    for (std::size_t g = gb; g < ge; ++g) {
      const std::vector<int>& idx = groups_[g];
      const std::size_t nb = idx.size();
      CholeskyFactor chol = [&] {
        try {
          return cholesky(covariance_matrix(gather_points(data_.points, idx), p));
        } catch (const NotPositiveDefinite& e) {
          throw NotPositiveDefinite(e.pivot(), e.pivot_value(),
                                    "block " + std::to_string(g) + " covariance");
        }
      }();
      acc.log_det += chol.log_det();

      std::vector<double> wy(nb);
      for (std::size_t r = 0; r < nb; ++r)
        wy[r] = data_.values[static_cast<std::size_t>(idx[r])];
      chol.forward_solve(wy);
      acc.yty += dot(wy, wy);

      if (ncol > 0) {
        std::vector<double> col(nb);
        DenseMatrix wx(nb, ncol);
        for (std::size_t j = 0; j < ncol; ++j) {
          for (std::size_t r = 0; r < nb; ++r)
            col[r] = design_(static_cast<std::size_t>(idx[r]), j);
          chol.forward_solve(col);
          for (std::size_t r = 0; r < nb; ++r) wx(r, j) = col[r];
        }
        for (std::size_t j = 0; j < ncol; ++j) {
          const double* wxj = wx.data() + j;
          double s = 0.0;
          for (std::size_t r = 0; r < nb; ++r) s += wxj[r * ncol] * wy[r];
          acc.xty[j] += s;
          for (std::size_t k = 0; k <= j; ++k) {
            const double* wxk = wx.data() + k;
            double t = 0.0;
            for (std::size_t r = 0; r < nb; ++r) t += wxj[r * ncol] * wxk[r * ncol];
            acc.xtx(j, k) += t;
          }
        }
      }
    }
    return acc;
  };
  auto combine = [&](BlockAccum a, const BlockAccum& b) {
    a.log_det += b.log_det;
    a.yty += b.yty;
    for (std::size_t j = 0; j < ncol; ++j) {
      a.xty[j] += b.xty[j];
      for (std::size_t k = 0; k <= j; ++k) a.xtx(j, k) += b.xtx(j, k);
    }
    return a;
  };

  BlockAccum init;
  init.xty.assign(ncol, 0.0);
  init.xtx = DenseMatrix(ncol, ncol);
  BlockAccum total = parallel_map_reduce<BlockAccum>(groups_.size(), 1,
                                                     options_.workers, init, map,
                                                     combine);

  ProfiledLogLik out;
  double ssr;
  if (ncol == 0) {
    ssr = total.yty;
  } else {
    for (std::size_t j = 0; j < ncol; ++j)
      for (std::size_t k = j + 1; k < ncol; ++k) total.xtx(j, k) = total.xtx(k, j);
    out.beta = cholesky(total.xtx).solve(total.xty);
    ssr = total.yty - dot(out.beta, total.xty);
    out.beta_precision = std::move(total.xtx);
  }
  out.log_lik =
      -0.5 * data_.size() * kLog2Pi - 0.5 * total.log_det - 0.5 * ssr;
  return out;
}

std::vector<double> BlockModel::component_log_liks(const MaternParams& p,
                                                   const std::vector<double>& beta) const {
  std::vector<double> terms(groups_.size());
  parallel_for(groups_.size(), 1, options_.workers, [&](std::size_t g) {
    const std::vector<int>& idx = groups_[g];
    const std::size_t nb = idx.size();
    const CholeskyFactor chol =
        cholesky(covariance_matrix(gather_points(data_.points, idx), p));
    std::vector<double> resid(nb);
    for (std::size_t r = 0; r < nb; ++r) {
      const std::size_t i = static_cast<std::size_t>(idx[r]);
      double mean = 0.0;
      for (std::size_t j = 0; j < beta.size(); ++j) mean += design_(i, j) * beta[j];
      resid[r] = data_.values[i] - mean;
    }
    chol.forward_solve(resid);
    terms[g] =
        -0.5 * nb * kLog2Pi - 0.5 * chol.log_det() - 0.5 * dot(resid, resid);
  });
  return terms;
}

}  // namespace vgp
