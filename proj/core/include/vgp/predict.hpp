#pragma once

#include <cstdint>
#include <vector>

#include "vgp/dataset.hpp"
#include "vgp/dense.hpp"
#include "vgp/matern.hpp"
#include "vgp/point_set.hpp"

namespace vgp {

// Per-site status flags carried by PredictionSet.
inline constexpr int kPredictOk = 0;
inline constexpr int kPredictGlobalFallback = 1;   // too few neighbors, global stats used
inline constexpr int kPredictVarianceClamped = 2;  // negative round-off variance set to 0

// Pointwise predictions with central Gaussian intervals at level alpha.
struct PredictionSet {
  PointList locations;
  std::vector<double> mean;
  std::vector<double> sd;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<int> flag;
  double alpha = 0.05;

  std::size_t size() const { return locations.size(); }
};

struct PredictOptions {
  int m_pred = 200;       // conditioning neighbors per prediction site
  double alpha = 0.05;
  bool latent = false;    // predict the noise-free field instead of a new observation
  int workers = 0;
  TrendFit trend;         // subtracted at the data, added back at the sites
};

// Kriging from the m_pred nearest observed sites, independently per
// prediction site.  The predictive variance targets a new noisy
// observation (sigma2 + nugget - c' C^-1 c) unless options.latent is set.
PredictionSet kriging_predict(const Dataset& data, const MaternParams& params,
                              const PointList& pred, const PredictOptions& options);

struct LocalWindowOptions {
  double half_width = 0.0;  // square window reach per axis; pick 4 * range when unsure
  int cap = 500;            // keep only this many nearest window members
  double alpha = 0.05;
  int workers = 0;
};

// Fits a plain Gaussian to the responses inside the square window around
// each site (no spatial correlation).  Sites with fewer than two window
// members fall back to the global sample mean and sd, flagged per site.
PredictionSet local_gaussian_predict(const Dataset& data, const PointList& pred,
                                     const LocalWindowOptions& options);

// Kriging restricted to the square-window neighborhood; same formulas as
// kriging_predict over a different conditioning set.  Sparse windows fall
// back to the trend mean and the marginal sd, flagged per site.
PredictionSet local_krige_predict(const Dataset& data, const MaternParams& params,
                                  const PointList& pred, const TrendFit& trend,
                                  const LocalWindowOptions& options);

// Joint draws of the response at the prediction sites by sequential
// conditional simulation (see cond_sim.cpp for the ordering rule).
struct CondSimDraws {
  PointList locations;
  int n_sims = 0;
  std::uint64_t seed = 0;
  DenseMatrix draws;  // n_sims rows, one column per location (input order)
};

struct CondSimOptions {
  int m_pred = 200;  // nearest observed and nearest simulated, each capped at this
  int workers = 0;
  TrendFit trend;
};

CondSimDraws cond_sim(const Dataset& data, const MaternParams& params,
                      const PointList& pred, int n_sims, std::uint64_t seed,
                      const CondSimOptions& options);

}  // namespace vgp
