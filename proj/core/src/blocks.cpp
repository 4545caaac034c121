#include "vgp/blocks.hpp"

#include <numeric>

#include "vgp/errors.hpp"
#include "vgp/rng.hpp"

namespace vgp {

BlockPartition voronoi_partition(const PointList& points, int n_blocks,
                                 std::uint64_t seed) {
  const std::size_t n = points.size();
  if (n_blocks < 1 || static_cast<std::size_t>(n_blocks) > n)
    throw Error("voronoi_partition requires 1 <= n_blocks <= n");

  BlockPartition part;
  part.n_blocks = n_blocks;

  // partial Fisher-Yates draw of center indices, without replacement
  RandomStream stream(seed, 0);
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  part.centers.reserve(n_blocks);
  for (int b = 0; b < n_blocks; ++b) {
    const std::size_t pick = b + stream.below(n - static_cast<std::size_t>(b));
    std::swap(pool[b], pool[pick]);
    part.centers.push_back(pool[b]);
  }

  part.assignment.assign(n, 0);
  part.members.assign(static_cast<std::size_t>(n_blocks), {});
  for (std::size_t i = 0; i < n; ++i) {
    int best = 0;
    double best_d = squared_distance(points[i], points[part.centers[0]]);
    for (int b = 1; b < n_blocks; ++b) {
      const double d = squared_distance(points[i], points[part.centers[b]]);
      if (d < best_d) {
        best_d = d;
        best = b;
      }
    }
    part.assignment[i] = best;
    part.members[best].push_back(static_cast<int>(i));
  }
  return part;
}

int default_block_count(std::size_t n) {
  const std::size_t blocks = n / 500;
  return blocks < 1 ? 1 : static_cast<int>(blocks);
}

}  // namespace vgp
