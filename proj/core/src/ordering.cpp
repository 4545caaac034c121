#include "vgp/ordering.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "vgp/kdtree.hpp"

namespace vgp {

namespace {

int nearest_to_centroid(const PointList& pts) {
  const Point c = centroid(pts);
  int best = 0;
  double best_d2 = std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d2 = squared_distance(pts[i], c);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = static_cast<int>(i);
    }
  }
  return best;
}

std::vector<int> maxmin_quadratic_impl(const PointList& pts) {
  const std::size_t n = pts.size();
  std::vector<int> order;
  order.reserve(n);
  std::vector<double> min_d2(n, std::numeric_limits<double>::max());
  std::vector<char> chosen(n, 0);

  int cur = nearest_to_centroid(pts);
  order.push_back(cur);
  chosen[cur] = 1;

  for (std::size_t step = 1; step < n; ++step) {
    const Point& last = pts[cur];
    int best = -1;
    double best_d2 = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (chosen[i]) continue;
      min_d2[i] = std::min(min_d2[i], squared_distance(pts[i], last));
      if (min_d2[i] > best_d2) {
        best_d2 = min_d2[i];
        best = static_cast<int>(i);
      }
    }
    cur = best;
    order.push_back(cur);
    chosen[cur] = 1;
  }
  return order;
}

// Lazy-heap variant: heap keys are stale upper bounds on the distance to
// the chosen set (distances only shrink as points are chosen).  A popped
// candidate is re-verified with an exact nearest-chosen query; if its key
// was stale it is re-queued with the fresh value, otherwise it is the true
// argmax and gets chosen.  Output matches the quadratic scan exactly.
std::vector<int> maxmin_lazy_impl(const PointList& pts) {
  const std::size_t n = pts.size();
  std::vector<int> order;
  order.reserve(n);

  KdTree tree(pts);
  tree.reset_activation();

  const int first = nearest_to_centroid(pts);
  order.push_back(first);
  tree.activate(first);

  // priority: larger distance first, then smaller index
  struct Entry {
    double d2;
    int idx;
    bool operator<(const Entry& o) const {
      if (d2 != o.d2) return d2 < o.d2;
      return idx > o.idx;
    }
  };
  std::priority_queue<Entry> heap;
  std::vector<char> chosen(n, 0);
  chosen[first] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (chosen[i]) continue;
    heap.push({squared_distance(pts[i], pts[first]), static_cast<int>(i)});
  }

  while (order.size() < n) {
    Entry top = heap.top();
    heap.pop();
    if (chosen[top.idx]) continue;
    const int near = tree.nearest(pts[top.idx], 1, tree.active_count())[0];
    const double fresh_d2 = squared_distance(pts[top.idx], pts[near]);
    if (fresh_d2 == top.d2) {
      chosen[top.idx] = 1;
      order.push_back(top.idx);
      tree.activate(top.idx);
    } else {
      heap.push({fresh_d2, top.idx});
    }
  }
  return order;
}

}  // namespace

namespace detail {
std::vector<int> maxmin_order_scan(const PointList& points) {
  return points.empty() ? std::vector<int>{} : maxmin_quadratic_impl(points);
}
std::vector<int> maxmin_order_heap(const PointList& points) {
  return points.empty() ? std::vector<int>{} : maxmin_lazy_impl(points);
}
}  // namespace detail

std::vector<int> maxmin_order(const PointList& points) {
  if (points.empty()) return {};
  if (points.size() <= 4096) return maxmin_quadratic_impl(points);
  return maxmin_lazy_impl(points);
}

NeighborSets::NeighborSets(const PointList& ordered_points, int max_neighbors)
    : max_neighbors_(max_neighbors) {
  const std::size_t n = ordered_points.size();
  offsets_.resize(n + 1, 0);
  if (n == 0) return;

  KdTree tree(ordered_points);
  tree.reset_activation();

  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    offsets_[i] = total;
    total += std::min<std::size_t>(i, max_neighbors);
  }
  offsets_[n] = total;
  flat_.resize(total);

  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) {
      std::vector<int> nb = tree.nearest(ordered_points[i], max_neighbors, tree.active_count());
      std::sort(nb.begin(), nb.end());
      std::copy(nb.begin(), nb.end(), flat_.begin() + offsets_[i]);
    }
    tree.activate(static_cast<int>(i));
  }
}

}  // namespace vgp
