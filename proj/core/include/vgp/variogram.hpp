#pragma once

#include <cstdint>
#include <vector>

#include "vgp/dataset.hpp"

namespace vgp {

// Binned empirical semivariogram (classical Matheron estimator):
// gamma(h) = sum over pairs in the bin of (y_i - y_j)^2 / (2 * count).
struct VariogramEstimate {
  std::vector<double> bin_centers;
  std::vector<double> semivariance;  // 0 for empty bins
  std::vector<std::size_t> counts;
  double max_dist = 0.0;
};

// Bins pair distances into n_bins equal widths up to max_dist
// (max_dist <= 0 picks half the domain diagonal).  When the number of
// pairs exceeds max_pairs, that many pairs are drawn uniformly with the
// seeded generator instead of enumerating all of them.
VariogramEstimate empirical_variogram(const Dataset& data, int n_bins, double max_dist,
                                      std::size_t max_pairs, std::uint64_t seed);

}  // namespace vgp
