#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "vgp/blocks.hpp"
#include "vgp/dataset.hpp"
#include "vgp/dense.hpp"
#include "vgp/matern.hpp"
#include "vgp/ordering.hpp"

namespace vgp {

// A Gaussian objective evaluation with the trend coefficients profiled out
// by generalized least squares.  `beta` is empty for zero-mean models.
// `beta_precision` is the whitened design gram (the inverse covariance of
// the profiled coefficients); 0 x 0 for zero-mean models.
struct ProfiledLogLik {
  double log_lik = 0.0;
  std::vector<double> beta;
  DenseMatrix beta_precision;
};

// Common interface of the likelihood objectives the optimizer works
// against.  An objective is a sum of component log densities; components
// are observations for the full and sequential objectives and block pairs
// for the composite one.
class ObjectiveModel {
 public:
  virtual ~ObjectiveModel() = default;

  virtual ProfiledLogLik evaluate(const MaternParams& p) const = 0;

  // Per-component log densities at a fixed trend coefficient vector (pass
  // an empty vector for zero mean).  Sums to the unprofiled log likelihood.
  virtual std::vector<double> component_log_liks(const MaternParams& p,
                                                 const std::vector<double>& beta) const = 0;

  virtual std::size_t component_count() const = 0;
  virtual std::size_t observation_count() const = 0;
};

// Full dense Gaussian log likelihood.  Materializes the n x n covariance,
// so construction refuses more than `size_guard` observations.
class ExactModel : public ObjectiveModel {
 public:
  ExactModel(Dataset data, DenseMatrix design, std::size_t size_guard = 10000);

  ProfiledLogLik evaluate(const MaternParams& p) const override;
  std::vector<double> component_log_liks(const MaternParams& p,
                                         const std::vector<double>& beta) const override;
  std::size_t component_count() const override { return data_.size(); }
  std::size_t observation_count() const override { return data_.size(); }

 private:
  Dataset data_;
  DenseMatrix design_;
};

// Sequential nearest-predecessor approximation of the Gaussian log
// likelihood: each ordered observation is conditioned on up to
// max_neighbors of its nearest predecessors.  With max_neighbors >= n - 1
// it reproduces the full likelihood exactly.
//
// Two evaluation strategies produce bit-identical results: a compressed
// plan that deduplicates repeated site pairs across conditioning sets
// (memory O(distinct pairs), used up to `compression_limit` observations)
// and a direct strategy recomputing distances on the fly (memory O(n m)).
class SequentialModel : public ObjectiveModel {
 public:
  enum class Strategy { automatic, compressed, direct };

  struct Options {
    int max_neighbors = 30;
    int workers = 0;  // 0: VGP_WORKERS env var, then hardware
    Strategy strategy = Strategy::automatic;
    std::size_t compression_limit = 20000;
  };

  // `data` and `design` rows must already be in the evaluation ordering
  // (see maxmin_order); conditioning sets are built from positions in it.
  SequentialModel(Dataset ordered_data, DenseMatrix ordered_design, Options options);

  // Swap in a new response vector over the same sites; the geometric plan
  // is kept, which makes repeated refits over the same locations cheap.
  void set_values(std::vector<double> values);

  ProfiledLogLik evaluate(const MaternParams& p) const override;
  std::vector<double> component_log_liks(const MaternParams& p,
                                         const std::vector<double>& beta) const override;
  std::size_t component_count() const override { return data_.size(); }
  std::size_t observation_count() const override { return data_.size(); }

  bool compressed() const { return compressed_; }
  const NeighborSets& neighbor_sets() const { return sets_; }
  std::size_t distinct_pair_count() const { return pair_dist_.size(); }

 private:
  const std::vector<double>& correlation_table(const MaternParams& p) const;

  Dataset data_;
  DenseMatrix design_;
  Options options_;
  NeighborSets sets_;
  bool compressed_ = false;
  // full conditioning: scan order equals global pair id order, so the
  // gather lists are implicit
  bool iota_pairs_ = false;

  // compressed plan: distinct site pairs and per-observation gather lists
  // in local lower-triangle scan order
  std::vector<double> pair_dist_;
  std::vector<double> pair_log_dist_;
  std::vector<std::uint32_t> pair_ids_;
  std::vector<std::size_t> pair_offsets_;

  // single-slot correlation cache keyed by exact (range, smoothness);
  // evaluations that only move sill or nugget reuse it
  mutable std::vector<double> cached_corr_;
  mutable double cached_range_ = 0.0;
  mutable double cached_smoothness_ = 0.0;
};

// Composite likelihood treating the blocks of a partition as independent:
// the objective is the sum of dense Gaussian log densities over the blocks,
// with trend coefficients profiled by pooled generalized least squares
// across all of them.  A single block reproduces the full likelihood.
class BlockModel : public ObjectiveModel {
 public:
  struct Options {
    int workers = 0;
    std::size_t max_block_size = 2000;  // dense guard per block
  };

  BlockModel(Dataset data, DenseMatrix design, BlockPartition blocks, Options options);

  ProfiledLogLik evaluate(const MaternParams& p) const override;
  std::vector<double> component_log_liks(const MaternParams& p,
                                         const std::vector<double>& beta) const override;
  std::size_t component_count() const override { return groups_.size(); }
  std::size_t observation_count() const override { return data_.size(); }

 private:
  Dataset data_;
  DenseMatrix design_;
  Options options_;
  std::vector<std::vector<int>> groups_;  // per block, observation indices, ascending
};

}  // namespace vgp
