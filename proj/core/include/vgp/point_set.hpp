#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace vgp {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using PointList = std::vector<Point>;

inline double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(const Point& a, const Point& b) {
  return std::sqrt(squared_distance(a, b));
}

struct BoundingBox {
  double min_x = 0.0, min_y = 0.0, max_x = 0.0, max_y = 0.0;

  static BoundingBox of(const PointList& pts) {
    BoundingBox b;
    if (pts.empty()) return b;
    b.min_x = b.max_x = pts[0].x;
    b.min_y = b.max_y = pts[0].y;
    for (const Point& p : pts) {
      b.min_x = std::min(b.min_x, p.x);
      b.max_x = std::max(b.max_x, p.x);
      b.min_y = std::min(b.min_y, p.y);
      b.max_y = std::max(b.max_y, p.y);
    }
    return b;
  }

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  double diagonal() const { return std::hypot(width(), height()); }
};

inline Point centroid(const PointList& pts) {
  Point c;
  if (pts.empty()) return c;
  for (const Point& p : pts) {
    c.x += p.x;
    c.y += p.y;
  }
  c.x /= pts.size();
  c.y /= pts.size();
  return c;
}

}  // namespace vgp
