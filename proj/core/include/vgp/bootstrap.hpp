#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "vgp/dataset.hpp"
#include "vgp/dense.hpp"
#include "vgp/fit.hpp"
#include "vgp/matern.hpp"
#include "vgp/skew_normal.hpp"

namespace vgp {

// One confidence interval from a sample of estimates: a skew-normal fit
// smooths the sampling distribution and its quantiles form the interval.
// The raw empirical quantiles ride along for comparison; they become the
// interval itself when the distribution fit fails.
struct SnInterval {
  double lower = 0.0;
  double upper = 0.0;
  SkewNormalParams params;
  double empirical_lower = 0.0;
  double empirical_upper = 0.0;
  bool used_empirical = false;
};

// Needs at least 50 samples.  Zero-spread samples raise DegenerateSample.
SnInterval sn_interval(const std::vector<double>& samples, double alpha);

struct BootstrapOptions {
  int n_reps = 1000;               // at least 50
  std::size_t subsample_size = 10000;  // capped at the data size
  double weight_radius = 0.0;      // <= 0: 5% of the domain diagonal
  double alpha = 0.05;
  std::uint64_t seed = 0;
  int workers = 0;
  std::size_t dense_guard = 12000;
  bool resample_each_replicate = false;  // fresh site subsample per replicate
  FitOptions refit = [] {
    FitOptions f;
    f.neighbor_stages = {10, 30};  // replicate refits trade depth for speed
    f.max_iter = 50;
    return f;
  }();
};

// Parameter order everywhere: sigma2, range, smoothness, nugget.
struct BootstrapResult {
  DenseMatrix replicate_estimates;  // n_reps x 4, failed rows NaN
  std::array<SnInterval, 4> intervals;
  std::vector<int> subsample;       // site indices of the shared subsample
  int n_failed = 0;
  bool unreliable = false;          // more than 10% of replicates failed
};

// Parametric bootstrap for the covariance parameters: simulate replicate
// responses at a de-cluster-weighted site subsample from the fitted
// parameters (one dense factorization shared by every replicate), refit
// each replicate zero-mean, and smooth the four estimate samples into
// intervals.  `params` should come from a converged fit of `data`, whose
// values must already be trend-free.
BootstrapResult bootstrap_ci(const Dataset& data, const MaternParams& params,
                             const BootstrapOptions& options);

}  // namespace vgp
