#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "vgp/point_set.hpp"

namespace vgp {

// Static balanced kd-tree over 2D points with exact k-nearest-neighbor and
// radius queries.  Ties are broken by (squared distance, original index).
//
// Every point carries an activation rank; queries only see points whose
// rank is below `active_limit`.  Ranks default to the original indices, so
// a fresh tree behaves like a plain kd-tree.  reset_activation() marks all
// points inactive and activate() then assigns ranks 0, 1, 2, ... in call
// order, which supports queries restricted to "points processed so far"
// under an arbitrary processing order.
class KdTree {
 public:
  static constexpr std::size_t kNoLimit = std::numeric_limits<std::size_t>::max();

  explicit KdTree(const PointList& points);

  std::size_t size() const { return points_.size(); }

  void reset_activation();
  // Assigns the next rank to the point; returns that rank.
  std::size_t activate(int point_index);
  std::size_t active_count() const { return next_rank_; }

  // Indices of up to k active nearest neighbors of q, sorted by
  // (squared distance, index).
  std::vector<int> nearest(const Point& q, int k, std::size_t active_limit = kNoLimit) const;

  // Indices of active points with distance(q, p) <= radius, sorted by
  // (squared distance, index).
  std::vector<int> within_radius(const Point& q, double radius,
                                 std::size_t active_limit = kNoLimit) const;

  // Number of active points within the radius (inclusive).
  std::size_t count_within_radius(const Point& q, double radius,
                                  std::size_t active_limit = kNoLimit) const;

  // Indices of active points in the axis-aligned square
  // [q.x - half_width, q.x + half_width] x [q.y - half_width, q.y + half_width]
  // (boundaries inclusive), sorted by (squared distance, index).
  std::vector<int> within_box(const Point& q, double half_width,
                              std::size_t active_limit = kNoLimit) const;

 private:
  struct Node {
    double min_x, min_y, max_x, max_y;
    std::int32_t begin, end;    // range in perm_
    std::int32_t left = -1;     // children; leaf when left < 0
    std::int32_t right = -1;
    std::size_t min_rank = 0;   // smallest activation rank in the subtree
  };

  std::int32_t build(std::int32_t begin, std::int32_t end);
  void refresh_min_ranks(std::int32_t node);
  double box_distance2(const Node& n, const Point& q) const;

  PointList points_;
  std::vector<std::int32_t> perm_;      // tree order -> point index
  std::vector<std::int32_t> position_;  // point index -> slot in perm_
  std::vector<std::size_t> rank_;
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
  std::size_t next_rank_ = 0;
};

}  // namespace vgp
