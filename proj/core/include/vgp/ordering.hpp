#pragma once

#include <cstddef>
#include <vector>

#include "vgp/point_set.hpp"

namespace vgp {

// Max-min space-filling ordering.  The first point is the one nearest the
// centroid; each following point maximizes its distance to all previously
// chosen points.  Ties are broken by smallest original index.  Returns the
// permutation: entry j is the original index of the j-th ordered point.
//
// Exact for every n.  Small inputs use the quadratic greedy scan; larger
// inputs switch to a lazy-heap variant with the same output.
std::vector<int> maxmin_order(const PointList& points);

namespace detail {
// Both implementations, directly callable so equivalence can be tested.
std::vector<int> maxmin_order_scan(const PointList& points);
std::vector<int> maxmin_order_heap(const PointList& points);
}  // namespace detail

// Apply a permutation: out[j] = values[perm[j]].
template <typename T>
std::vector<T> apply_permutation(const std::vector<T>& values, const std::vector<int>& perm) {
  std::vector<T> out;
  out.reserve(perm.size());
  for (int idx : perm) out.push_back(values[idx]);
  return out;
}

// Conditioning sets over an ordered point list: entry i holds up to
// max_neighbors nearest predecessors (indices < i), sorted ascending.
// Entry 0 is always empty.  Stored flat to stay compact at large n.
class NeighborSets {
 public:
  NeighborSets(const PointList& ordered_points, int max_neighbors);

  std::size_t size() const { return offsets_.size() - 1; }
  int max_neighbors() const { return max_neighbors_; }

  const int* begin(std::size_t i) const { return flat_.data() + offsets_[i]; }
  const int* end(std::size_t i) const { return flat_.data() + offsets_[i + 1]; }
  std::size_t count(std::size_t i) const { return offsets_[i + 1] - offsets_[i]; }

 private:
  std::vector<int> flat_;
  std::vector<std::size_t> offsets_;
  int max_neighbors_ = 0;
};

}  // namespace vgp
