#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vgp/dataset.hpp"
#include "vgp/matern.hpp"
#include "vgp/point_set.hpp"

namespace vgp {

// One joint draw of the response surface at the given sites: trend plus a
// correlated Gaussian vector from a dense Cholesky factor (nugget
// included).  Guarded against accidental huge dense factorizations.
std::vector<double> simulate_gp(const PointList& points, const MaternParams& params,
                                const TrendFit& trend, std::uint64_t seed,
                                std::size_t dense_guard = 12000);

// Site patterns on the unit square, mimicking common sampling designs:
// uniform, a dense subregion, three nested density tiers, horizontal
// coverage gaps, and clustered disks over a sparse background.
enum class PatternKind {
  homogeneous,
  dense_subregion,
  nested_density,
  striped_gaps,
  circular_clusters,
};

PatternKind pattern_kind_from_string(const std::string& name);
std::string to_string(PatternKind kind);

struct PatternSpec {
  PatternKind kind = PatternKind::homogeneous;
  std::size_t n = 0;
  std::uint64_t seed = 0;

  // dense_subregion: this fraction of the points lands in the rectangle
  double subregion_fraction = 0.8;
  double subregion_min_x = 0.0, subregion_min_y = 0.0;
  double subregion_max_x = 0.5, subregion_max_y = 0.5;

  // nested_density: probability mass of the three nested tiers, outermost
  // first (tier rectangles are the unit square, its middle half, and its
  // middle quarter; the innermost covers 6.25% of the area)
  double tier_mass[3] = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

  // striped_gaps: evenly spaced horizontal bands holding no points
  int stripe_count = 6;
  double stripe_width = 0.05;

  // circular_clusters: uniform-in-disk clusters over a uniform background
  int cluster_count = 6;
  double cluster_radius = 0.08;
  double cluster_fraction = 0.85;
};

// Exactly spec.n points in [0,1]^2, deterministic given spec.seed.
PointList generate_pattern(const PatternSpec& spec);

}  // namespace vgp
