#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vgp/point_set.hpp"

namespace vgp {

// Voronoi partition of the points around seeded sample centers.  Block ids
// are contiguous 0..n_blocks-1 and follow the draw order of the centers.
struct BlockPartition {
  int n_blocks = 0;
  std::vector<int> centers;                 // point index of each block's seed
  std::vector<int> assignment;              // block id per point
  std::vector<std::vector<int>> members;    // per block, point indices, ascending

  std::size_t blocks() const { return members.size(); }
};

// Draws n_blocks center points uniformly without replacement with the seeded
// generator, then assigns every point to its nearest center (ties to the
// smaller block id).  Deterministic given the seed.
BlockPartition voronoi_partition(const PointList& points, int n_blocks,
                                 std::uint64_t seed);

// Block count heuristic: one block per 500 points, at least one.
int default_block_count(std::size_t n);

}  // namespace vgp
