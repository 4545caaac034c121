#include "vgp/variogram.hpp"

#include <cmath>

#include "vgp/errors.hpp"
#include "vgp/rng.hpp"

namespace vgp {

VariogramEstimate empirical_variogram(const Dataset& data, int n_bins, double max_dist,
                                      std::size_t max_pairs, std::uint64_t seed) {
  const std::size_t n = data.size();
  if (n < 2) throw DegenerateSample("variogram needs at least two observations");
  if (n_bins < 1) throw InputError("variogram needs at least one bin");
  if (max_pairs < 1) throw InputError("max_pairs must be positive");

  if (max_dist <= 0.0) max_dist = 0.5 * BoundingBox::of(data.points).diagonal();
  if (!(max_dist > 0.0)) throw DegenerateSample("all sites coincide");

  VariogramEstimate out;
  out.max_dist = max_dist;
  const double width = max_dist / n_bins;
  out.bin_centers.resize(n_bins);
  for (int b = 0; b < n_bins; ++b) out.bin_centers[b] = (b + 0.5) * width;
  out.counts.assign(n_bins, 0);
  std::vector<double> sums(n_bins, 0.0);

  auto add_pair = [&](std::size_t i, std::size_t j) {
    const double d = distance(data.points[i], data.points[j]);
    if (d > max_dist) return;
    int b = static_cast<int>(d / width);
    if (b >= n_bins) b = n_bins - 1;  // d == max_dist edge
    const double diff = data.values[i] - data.values[j];
    sums[b] += diff * diff;
    ++out.counts[b];
  };

  const std::size_t all_pairs = n * (n - 1) / 2;
  if (all_pairs <= max_pairs) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) add_pair(i, j);
  } else {
    RandomStream stream(seed, 0);
    for (std::size_t k = 0; k < max_pairs; ++k) {
      const std::size_t i = stream.below(n);
      std::size_t j = stream.below(n - 1);
      if (j >= i) ++j;
      add_pair(i, j);
    }
  }

  out.semivariance.assign(n_bins, 0.0);
  for (int b = 0; b < n_bins; ++b)
    if (out.counts[b] > 0) out.semivariance[b] = sums[b] / (2.0 * out.counts[b]);
  return out;
}

}  // namespace vgp
