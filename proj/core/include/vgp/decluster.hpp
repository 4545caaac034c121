#pragma once

#include <vector>

#include "vgp/point_set.hpp"
#include "vgp/rng.hpp"

namespace vgp {

// Inverse neighborhood-count weights, normalized to sum to one:
// w_i proportional to 1 / #{j : |s_j - s_i| <= radius}.  The count includes
// the point itself.  Points in dense clusters get small weights, isolated
// points large ones.
std::vector<double> decluster_weights(const PointList& points, double radius);

// Draw k indices without replacement, each draw proportional to the
// remaining weights.  Deterministic given the stream; returned in draw
// order.  Weights must be non-negative with at least k strictly positive.
std::vector<int> weighted_subsample(const std::vector<double>& weights, int k,
                                    RandomStream& stream);

}  // namespace vgp
