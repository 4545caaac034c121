#include "vgp/decluster.hpp"

#include <cstddef>

#include "vgp/errors.hpp"
#include "vgp/kdtree.hpp"

namespace vgp {

std::vector<double> decluster_weights(const PointList& points, double radius) {
  if (radius <= 0.0) throw Error("decluster_weights requires radius > 0");
  KdTree tree(points);
  std::vector<double> w(points.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    w[i] = 1.0 / static_cast<double>(tree.count_within_radius(points[i], radius));
    sum += w[i];
  }
  for (double& wi : w) wi /= sum;
  return w;
}

namespace {

// Fenwick tree over weights supporting prefix sums and point updates, used
// to locate the index whose cumulative weight brackets a uniform draw.
class PrefixSums {
 public:
  explicit PrefixSums(const std::vector<double>& w) : tree_(w.size() + 1, 0.0) {
    for (std::size_t i = 0; i < w.size(); ++i) add(i, w[i]);
  }

  void add(std::size_t i, double delta) {
    for (std::size_t k = i + 1; k < tree_.size(); k += k & (~k + 1)) tree_[k] += delta;
  }

  double total() const {
    double s = 0.0;
    for (std::size_t k = tree_.size() - 1; k > 0; k -= k & (~k + 1)) s += tree_[k];
    return s;
  }

  // Smallest index i with prefix_sum(0..i) > target.
  std::size_t upper_bound(double target) const {
    std::size_t pos = 0;
    std::size_t mask = 1;
    while (mask * 2 < tree_.size()) mask *= 2;
    for (; mask > 0; mask /= 2) {
      const std::size_t next = pos + mask;
      if (next < tree_.size() && tree_[next] <= target) {
        target -= tree_[next];
        pos = next;
      }
    }
    return pos;  // zero-based index
  }

 private:
  std::vector<double> tree_;
};

}  // namespace

std::vector<int> weighted_subsample(const std::vector<double>& weights, int k,
                                    RandomStream& stream) {
  const std::size_t n = weights.size();
  if (k < 0 || static_cast<std::size_t>(k) > n)
    throw Error("weighted_subsample: k out of range");
  std::size_t positive = 0;
  for (double w : weights) {
    if (w < 0.0) throw Error("weighted_subsample: negative weight");
    if (w > 0.0) ++positive;
  }
  if (positive < static_cast<std::size_t>(k))
    throw DegenerateSample("weighted_subsample: fewer positive weights than draws");

  PrefixSums sums(weights);
  std::vector<double> current(weights);
  std::vector<int> out;
  out.reserve(k);
  for (int draw = 0; draw < k; ++draw) {
    const double total = sums.total();
    std::size_t idx = sums.upper_bound(stream.uniform() * total);
    // guard against roundoff landing on an exhausted slot
    while (idx < n && current[idx] <= 0.0) ++idx;
    if (idx >= n) {
      idx = n;
      while (idx > 0 && current[idx - 1] <= 0.0) --idx;
      --idx;
    }
    out.push_back(static_cast<int>(idx));
    sums.add(idx, -current[idx]);
    current[idx] = 0.0;
  }
  return out;
}

}  // namespace vgp
