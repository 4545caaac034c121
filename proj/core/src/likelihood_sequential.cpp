#include <cmath>
#include <cstring>
#include <unordered_map>
#include <utility>

#include "vgp/errors.hpp"
#include "vgp/likelihood.hpp"
#include "vgp/normal.hpp"
#include "vgp/parallel.hpp"

namespace vgp {
namespace {

constexpr std::size_t kObsChunk = 256;

// map-reduce partial of a profiled evaluation
struct Accum {
  double const_sum = 0.0;  // sum of -log(2 pi)/2 - log L_kk
  double yy = 0.0;         // sum of squared whitened responses
  std::vector<double> xty;
  std::vector<double> xtx;  // p x p row-major

  explicit Accum(std::size_t p = 0) : xty(p, 0.0), xtx(p * p, 0.0) {}

  Accum& operator+=(const Accum& o) {
    const_sum += o.const_sum;
    yy += o.yy;
    for (std::size_t j = 0; j < xty.size(); ++j) xty[j] += o.xty[j];
    for (std::size_t j = 0; j < xtx.size(); ++j) xtx[j] += o.xtx[j];
    return *this;
  }
};

}  // namespace

SequentialModel::SequentialModel(Dataset ordered_data, DenseMatrix ordered_design,
                                 Options options)
    : data_(std::move(ordered_data)),
      design_(std::move(ordered_design)),
      options_(options),
      sets_(data_.points, options.max_neighbors) {
  if (data_.points.size() != data_.values.size())
    throw Error("point and value counts differ");
  if (design_.rows() != 0 && design_.rows() != data_.size())
    throw Error("design row count does not match observation count");
  if (options_.max_neighbors < 0) throw Error("max_neighbors must be nonnegative");

  const std::size_t n = data_.size();
  switch (options_.strategy) {
    case Strategy::compressed:
      compressed_ = true;
      break;
    case Strategy::direct:
      compressed_ = false;
      break;
    case Strategy::automatic:
      compressed_ = n <= options_.compression_limit;
      break;
  }

  bool full_conditioning = compressed_;
  for (std::size_t i = 0; i < n && full_conditioning; ++i)
    full_conditioning = sets_.count(i) == i;

  if (full_conditioning) {
    // Every conditioning set is all prior indices, so the local
    // lower-triangle scan of observation i walks global pair ids
    // 0, 1, ..., i(i+1)/2 - 1 in order; no id table is needed.
    iota_pairs_ = true;
    pair_dist_.resize(n < 2 ? 0 : n * (n - 1) / 2);
    std::size_t t = 0;
    for (std::size_t a = 1; a < n; ++a)
      for (std::size_t b = 0; b < a; ++b)
        pair_dist_[t++] = distance(data_.points[b], data_.points[a]);
  } else if (compressed_) {
    // Deduplicate site pairs shared between conditioning sets; store per
    // observation the pair ids in local lower-triangle scan order.
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    ids.reserve(n * 8);
    pair_offsets_.resize(n + 1, 0);
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = sets_.count(i);
      total += (k + 1) * k / 2;
    }
    pair_ids_.reserve(total);

    std::vector<int> idx;
    for (std::size_t i = 0; i < n; ++i) {
      pair_offsets_[i] = pair_ids_.size();
      const std::size_t k = sets_.count(i);
      idx.assign(sets_.begin(i), sets_.end(i));
      idx.push_back(static_cast<int>(i));
      for (std::size_t a = 1; a <= k; ++a) {
        for (std::size_t b = 0; b < a; ++b) {
          // conditioning indices ascend, so idx[b] < idx[a]
          const std::uint64_t key =
              (static_cast<std::uint64_t>(idx[b]) << 32) | static_cast<std::uint32_t>(idx[a]);
          auto [it, inserted] = ids.emplace(key, static_cast<std::uint32_t>(pair_dist_.size()));
          if (inserted) pair_dist_.push_back(distance(data_.points[idx[b]], data_.points[idx[a]]));
          pair_ids_.push_back(it->second);
        }
      }
    }
    pair_offsets_[n] = pair_ids_.size();
  }
  if (compressed_) {
    pair_log_dist_.resize(pair_dist_.size());
    for (std::size_t k = 0; k < pair_dist_.size(); ++k)
      pair_log_dist_[k] = pair_dist_[k] > 0.0 ? std::log(pair_dist_[k]) : 0.0;
  }
}

void SequentialModel::set_values(std::vector<double> values) {
  if (values.size() != data_.points.size())
    throw Error("replacement value count does not match site count");
  data_.values = std::move(values);
}

const std::vector<double>& SequentialModel::correlation_table(const MaternParams& p) const {
  if (!cached_corr_.empty() && cached_range_ == p.range && cached_smoothness_ == p.smoothness)
    return cached_corr_;
  const MaternCorrelation corr(p.range, p.smoothness);
  cached_corr_.assign(pair_dist_.size(), 0.0);
  parallel_for(pair_dist_.size(), 4096, options_.workers, [&](std::size_t k) {
    cached_corr_[k] = corr.with_log(pair_dist_[k], pair_log_dist_[k]);
  });
  cached_range_ = p.range;
  cached_smoothness_ = p.smoothness;
  return cached_corr_;
}

ProfiledLogLik SequentialModel::evaluate(const MaternParams& p) const {
  const std::size_t n = data_.size();
  const std::size_t ncol = design_.cols();
  const std::size_t dim_max = static_cast<std::size_t>(options_.max_neighbors) + 1;
  const double floor_var = 1e-12 * (p.sigma2 + p.nugget);

  const std::vector<double>* corr_table = nullptr;
  if (compressed_) corr_table = &correlation_table(p);

  auto map = [&](std::size_t begin, std::size_t end) {
    Accum acc(ncol);
    const MaternCorrelation corr(p.range, p.smoothness);
    std::vector<double> mat(dim_max * dim_max);
    std::vector<double> vec(dim_max);
    std::vector<int> idx(dim_max);
    std::vector<double> wx_row(ncol);

    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t k = sets_.count(i);
      const std::size_t dim = k + 1;
      idx.assign(sets_.begin(i), sets_.end(i));
      idx.push_back(static_cast<int>(i));

      if (iota_pairs_) {
        const double* tab = corr_table->data();
        std::size_t t = 0;
        for (std::size_t a = 1; a < dim; ++a) {
          double* row = mat.data() + a * dim;
          for (std::size_t b = 0; b < a; ++b) row[b] = p.sigma2 * tab[t++];
        }
      } else if (compressed_) {
        const std::uint32_t* ids = pair_ids_.data() + pair_offsets_[i];
        std::size_t t = 0;
        for (std::size_t a = 1; a < dim; ++a) {
          double* row = mat.data() + a * dim;
          for (std::size_t b = 0; b < a; ++b) row[b] = p.sigma2 * (*corr_table)[ids[t++]];
        }
      } else {
        for (std::size_t a = 1; a < dim; ++a) {
          double* row = mat.data() + a * dim;
          const Point& pa = data_.points[idx[a]];
          for (std::size_t b = 0; b < a; ++b)
            row[b] = p.sigma2 * corr(distance(pa, data_.points[idx[b]]));
        }
      }
      for (std::size_t a = 0; a < dim; ++a) mat[a * dim + a] = p.sigma2 + p.nugget;

      try {
        cholesky_in_place_floored(mat.data(), dim, floor_var);
      } catch (const NotPositiveDefinite& e) {
        throw NotPositiveDefinite(e.pivot(), e.pivot_value(),
                                  "conditional covariance at observation " +
                                      std::to_string(i));
      }
      const double diag_last = mat[(dim - 1) * dim + (dim - 1)];
      acc.const_sum += -0.5 * kLog2Pi - std::log(diag_last);

      for (std::size_t a = 0; a < dim; ++a) vec[a] = data_.values[idx[a]];
      forward_solve_in_place(mat.data(), dim, vec.data());
      const double wy = vec[dim - 1];
      acc.yy += wy * wy;

      for (std::size_t j = 0; j < ncol; ++j) {
        for (std::size_t a = 0; a < dim; ++a) vec[a] = design_(idx[a], j);
        forward_solve_in_place(mat.data(), dim, vec.data());
        wx_row[j] = vec[dim - 1];
      }
      for (std::size_t j = 0; j < ncol; ++j) {
        acc.xty[j] += wx_row[j] * wy;
        for (std::size_t l = 0; l < ncol; ++l) acc.xtx[j * ncol + l] += wx_row[j] * wx_row[l];
      }
    }
    return acc;
  };

  Accum total = parallel_map_reduce<Accum>(n, kObsChunk, options_.workers, Accum(ncol), map,
                                           [](Accum a, const Accum& b) {
                                             a += b;
                                             return a;
                                           });

  ProfiledLogLik out;
  double ssr = total.yy;
  if (ncol > 0) {
    DenseMatrix gram(ncol, ncol);
    for (std::size_t j = 0; j < ncol; ++j)
      for (std::size_t l = 0; l < ncol; ++l) gram(j, l) = total.xtx[j * ncol + l];
    out.beta = cholesky(gram).solve(total.xty);
    ssr -= dot(out.beta, total.xty);
    out.beta_precision = std::move(gram);
  }
  out.log_lik = total.const_sum - 0.5 * ssr;
  return out;
}

std::vector<double> SequentialModel::component_log_liks(const MaternParams& p,
                                                        const std::vector<double>& beta) const {
  const std::size_t n = data_.size();
  const std::size_t dim_max = static_cast<std::size_t>(options_.max_neighbors) + 1;
  const double floor_var = 1e-12 * (p.sigma2 + p.nugget);

  std::vector<double> resid = data_.values;
  if (!beta.empty()) {
    const std::vector<double> trend = matvec(design_, beta);
    for (std::size_t i = 0; i < n; ++i) resid[i] -= trend[i];
  }

  const std::vector<double>* corr_table = nullptr;
  if (compressed_) corr_table = &correlation_table(p);

  std::vector<double> terms(n, 0.0);
  parallel_map_reduce<int>(
      n, kObsChunk, options_.workers, 0,
      [&](std::size_t begin, std::size_t end) {
        const MaternCorrelation corr(p.range, p.smoothness);
        std::vector<double> mat(dim_max * dim_max);
        std::vector<double> vec(dim_max);
        std::vector<int> idx(dim_max);
        for (std::size_t i = begin; i < end; ++i) {
          const std::size_t k = sets_.count(i);
          const std::size_t dim = k + 1;
          idx.assign(sets_.begin(i), sets_.end(i));
          idx.push_back(static_cast<int>(i));

          if (iota_pairs_) {
            const double* tab = corr_table->data();
            std::size_t t = 0;
            for (std::size_t a = 1; a < dim; ++a) {
              double* row = mat.data() + a * dim;
              for (std::size_t b = 0; b < a; ++b) row[b] = p.sigma2 * tab[t++];
            }
          } else if (compressed_) {
            const std::uint32_t* ids = pair_ids_.data() + pair_offsets_[i];
            std::size_t t = 0;
            for (std::size_t a = 1; a < dim; ++a) {
              double* row = mat.data() + a * dim;
              for (std::size_t b = 0; b < a; ++b) row[b] = p.sigma2 * (*corr_table)[ids[t++]];
            }
          } else {
            for (std::size_t a = 1; a < dim; ++a) {
              double* row = mat.data() + a * dim;
              const Point& pa = data_.points[idx[a]];
              for (std::size_t b = 0; b < a; ++b)
                row[b] = p.sigma2 * corr(distance(pa, data_.points[idx[b]]));
            }
          }
          for (std::size_t a = 0; a < dim; ++a) mat[a * dim + a] = p.sigma2 + p.nugget;

          try {
            cholesky_in_place_floored(mat.data(), dim, floor_var);
          } catch (const NotPositiveDefinite& e) {
            throw NotPositiveDefinite(e.pivot(), e.pivot_value(),
                                      "conditional covariance at observation " +
                                          std::to_string(i));
          }
          for (std::size_t a = 0; a < dim; ++a) vec[a] = resid[idx[a]];
          forward_solve_in_place(mat.data(), dim, vec.data());
          const double z = vec[dim - 1];
          terms[i] = -0.5 * kLog2Pi - std::log(mat[(dim - 1) * dim + (dim - 1)]) - 0.5 * z * z;
        }
        return 0;
      },
      [](int a, int) { return a; });
  return terms;
}

}  // namespace vgp
