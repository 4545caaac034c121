#include "vgp/kdtree.hpp"

#include <algorithm>
#include <queue>

#include "vgp/errors.hpp"

namespace vgp {

namespace {
constexpr int kLeafSize = 16;
}

KdTree::KdTree(const PointList& points) : points_(points) {
  const std::size_t n = points_.size();
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = static_cast<std::int32_t>(i);
  rank_.resize(n);
  for (std::size_t i = 0; i < n; ++i) rank_[i] = i;
  next_rank_ = n;
  if (n > 0) root_ = build(0, static_cast<std::int32_t>(n));
  position_.resize(n);
  for (std::size_t slot = 0; slot < n; ++slot) position_[perm_[slot]] = static_cast<std::int32_t>(slot);
}

std::int32_t KdTree::build(std::int32_t begin, std::int32_t end) {
  Node node;
  node.begin = begin;
  node.end = end;
  node.min_x = node.max_x = points_[perm_[begin]].x;
  node.min_y = node.max_y = points_[perm_[begin]].y;
  for (std::int32_t i = begin + 1; i < end; ++i) {
    const Point& p = points_[perm_[i]];
    node.min_x = std::min(node.min_x, p.x);
    node.max_x = std::max(node.max_x, p.x);
    node.min_y = std::min(node.min_y, p.y);
    node.max_y = std::max(node.max_y, p.y);
  }
  node.min_rank = 0;
  for (std::int32_t i = begin; i < end; ++i)
    node.min_rank = i == begin ? rank_[perm_[i]] : std::min(node.min_rank, rank_[perm_[i]]);

  const std::int32_t id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= kLeafSize) return id;

  const bool split_x = node.max_x - node.min_x >= node.max_y - node.min_y;
  const std::int32_t mid = begin + (end - begin) / 2;
  auto cmp = [&](std::int32_t a, std::int32_t b) {
    const Point& pa = points_[a];
    const Point& pb = points_[b];
    if (split_x) return pa.x < pb.x || (pa.x == pb.x && a < b);
    return pa.y < pb.y || (pa.y == pb.y && a < b);
  };
  std::nth_element(perm_.begin() + begin, perm_.begin() + mid, perm_.begin() + end, cmp);

  const std::int32_t left = build(begin, mid);
  const std::int32_t right = build(mid, end);
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

void KdTree::reset_activation() {
  const std::size_t inactive = kNoLimit;
  for (auto& r : rank_) r = inactive;
  for (auto& n : nodes_) n.min_rank = inactive;
  next_rank_ = 0;
}

std::size_t KdTree::activate(int point_index) {
  const std::size_t rank = next_rank_++;
  rank_[point_index] = rank;
  // walk down from the root updating subtree minima along the way
  const std::int32_t pos = position_[point_index];
  std::int32_t cur = root_;
  while (cur >= 0) {
    Node& n = nodes_[cur];
    n.min_rank = std::min(n.min_rank, rank);
    if (n.left < 0) break;
    cur = pos < nodes_[n.left].end ? n.left : n.right;
  }
  return rank;
}

double KdTree::box_distance2(const Node& n, const Point& q) const {
  double dx = 0.0;
  if (q.x < n.min_x)
    dx = n.min_x - q.x;
  else if (q.x > n.max_x)
    dx = q.x - n.max_x;
  double dy = 0.0;
  if (q.y < n.min_y)
    dy = n.min_y - q.y;
  else if (q.y > n.max_y)
    dy = q.y - n.max_y;
  return dx * dx + dy * dy;
}

std::vector<int> KdTree::nearest(const Point& q, int k, std::size_t active_limit) const {
  std::vector<int> out;
  if (k <= 0 || root_ < 0) return out;

  using Entry = std::pair<double, int>;  // (squared distance, index)
  std::priority_queue<Entry> heap;       // worst candidate on top

  auto consider = [&](int idx, double d2) {
    if (static_cast<int>(heap.size()) < k) {
      heap.emplace(d2, idx);
    } else {
      const Entry& worst = heap.top();
      if (d2 < worst.first || (d2 == worst.first && idx < worst.second)) {
        heap.pop();
        heap.emplace(d2, idx);
      }
    }
  };

  // depth-first, nearer child first; prune on bounding-box distance
  auto visit = [&](auto&& self, std::int32_t id) -> void {
    const Node& n = nodes_[id];
    if (n.min_rank >= active_limit) return;
    if (static_cast<int>(heap.size()) == k && box_distance2(n, q) > heap.top().first) return;
    if (n.left < 0) {
      for (std::int32_t i = n.begin; i < n.end; ++i) {
        const int idx = perm_[i];
        if (rank_[idx] >= active_limit) continue;
        consider(idx, squared_distance(q, points_[idx]));
      }
      return;
    }
    const double dl = box_distance2(nodes_[n.left], q);
    const double dr = box_distance2(nodes_[n.right], q);
    if (dl <= dr) {
      self(self, n.left);
      self(self, n.right);
    } else {
      self(self, n.right);
      self(self, n.left);
    }
  };
  visit(visit, root_);

  std::vector<Entry> entries;
  entries.reserve(heap.size());
  while (!heap.empty()) {
    entries.push_back(heap.top());
    heap.pop();
  }
  std::sort(entries.begin(), entries.end());
  out.reserve(entries.size());
  for (const Entry& e : entries) out.push_back(e.second);
  return out;
}

std::vector<int> KdTree::within_radius(const Point& q, double radius,
                                       std::size_t active_limit) const {
  std::vector<std::pair<double, int>> found;
  if (root_ < 0 || radius < 0.0) return {};
  const double r2 = radius * radius;

  auto visit = [&](auto&& self, std::int32_t id) -> void {
    const Node& n = nodes_[id];
    if (n.min_rank >= active_limit) return;
    if (box_distance2(n, q) > r2) return;
    if (n.left < 0) {
      for (std::int32_t i = n.begin; i < n.end; ++i) {
        const int idx = perm_[i];
        if (rank_[idx] >= active_limit) continue;
        const double d2 = squared_distance(q, points_[idx]);
        if (d2 <= r2) found.emplace_back(d2, idx);
      }
      return;
    }
    self(self, n.left);
    self(self, n.right);
  };
  visit(visit, root_);

  std::sort(found.begin(), found.end());
  std::vector<int> out;
  out.reserve(found.size());
  for (const auto& e : found) out.push_back(e.second);
  return out;
}

std::vector<int> KdTree::within_box(const Point& q, double half_width,
                                    std::size_t active_limit) const {
  std::vector<std::pair<double, int>> found;
  if (root_ < 0 || half_width < 0.0) return {};
  const double lo_x = q.x - half_width, hi_x = q.x + half_width;
  const double lo_y = q.y - half_width, hi_y = q.y + half_width;

  auto visit = [&](auto&& self, std::int32_t id) -> void {
    const Node& n = nodes_[id];
    if (n.min_rank >= active_limit) return;
    if (n.min_x > hi_x || n.max_x < lo_x || n.min_y > hi_y || n.max_y < lo_y) return;
    if (n.left < 0) {
      for (std::int32_t i = n.begin; i < n.end; ++i) {
        const int idx = perm_[i];
        if (rank_[idx] >= active_limit) continue;
        const Point& p = points_[idx];
        if (p.x < lo_x || p.x > hi_x || p.y < lo_y || p.y > hi_y) continue;
        found.emplace_back(squared_distance(q, p), idx);
      }
      return;
    }
    self(self, n.left);
    self(self, n.right);
  };
  visit(visit, root_);

  std::sort(found.begin(), found.end());
  std::vector<int> out;
  out.reserve(found.size());
  for (const auto& e : found) out.push_back(e.second);
  return out;
}

std::size_t KdTree::count_within_radius(const Point& q, double radius,
                                        std::size_t active_limit) const {
  std::size_t count = 0;
  if (root_ < 0 || radius < 0.0) return 0;
  const double r2 = radius * radius;

  auto visit = [&](auto&& self, std::int32_t id) -> void {
    const Node& n = nodes_[id];
    if (n.min_rank >= active_limit) return;
    if (box_distance2(n, q) > r2) return;
    if (n.left < 0) {
      for (std::int32_t i = n.begin; i < n.end; ++i) {
        const int idx = perm_[i];
        if (rank_[idx] >= active_limit) continue;
        if (squared_distance(q, points_[idx]) <= r2) ++count;
      }
      return;
    }
    self(self, n.left);
    self(self, n.right);
  };
  visit(visit, root_);
  return count;
}

}  // namespace vgp
