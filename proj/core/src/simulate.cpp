#include "vgp/simulate.hpp"

#include <cmath>
#include <string>

#include "vgp/dense.hpp"
#include "vgp/errors.hpp"
#include "vgp/rng.hpp"

namespace vgp {

std::vector<double> simulate_gp(const PointList& points, const MaternParams& params,
                                const TrendFit& trend, std::uint64_t seed,
                                std::size_t dense_guard) {
  const std::size_t n = points.size();
  if (n == 0) throw Error("simulate_gp needs at least one site");
  if (n > dense_guard) throw SizeGuardError("dense simulation", n, dense_guard);

  const CholeskyFactor chol = cholesky(covariance_matrix(points, params));
  RandomStream stream(seed, 0);
  std::vector<double> z(n);
  for (auto& v : z) v = stream.normal();

  std::vector<double> y = trend_values(points, trend);
  const DenseMatrix& l = chol.matrix();
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = l.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j <= i; ++j) s += row[j] * z[j];
    y[i] += s;
  }
  return y;
}

PatternKind pattern_kind_from_string(const std::string& name) {
  if (name == "homogeneous") return PatternKind::homogeneous;
  if (name == "dense_subregion") return PatternKind::dense_subregion;
  if (name == "nested_density") return PatternKind::nested_density;
  if (name == "striped_gaps") return PatternKind::striped_gaps;
  if (name == "circular_clusters") return PatternKind::circular_clusters;
  throw InputError("unknown pattern '" + name +
                   "'; expected homogeneous, dense_subregion, nested_density, "
                   "striped_gaps, or circular_clusters");
}

std::string to_string(PatternKind kind) {
  switch (kind) {
    case PatternKind::homogeneous:
      return "homogeneous";
    case PatternKind::dense_subregion:
      return "dense_subregion";
    case PatternKind::nested_density:
      return "nested_density";
    case PatternKind::striped_gaps:
      return "striped_gaps";
    case PatternKind::circular_clusters:
      return "circular_clusters";
  }
  return "homogeneous";
}

namespace {

Point uniform_point(RandomStream& stream) {
  const double x = stream.uniform();
  const double y = stream.uniform();
  return {x, y};
}

Point uniform_in_rect(RandomStream& stream, double min_x, double min_y, double max_x,
                      double max_y) {
  const double x = stream.uniform(min_x, max_x);
  const double y = stream.uniform(min_y, max_y);
  return {x, y};
}

}  // namespace

PointList generate_pattern(const PatternSpec& spec) {
  if (spec.n < 1) throw InputError("pattern needs n >= 1");
  RandomStream stream(spec.seed, 0);
  PointList out;
  out.reserve(spec.n);

  switch (spec.kind) {
    case PatternKind::homogeneous: {
      for (std::size_t i = 0; i < spec.n; ++i) out.push_back(uniform_point(stream));
      break;
    }

    case PatternKind::dense_subregion: {
      if (!(spec.subregion_min_x < spec.subregion_max_x &&
            spec.subregion_min_y < spec.subregion_max_y))
        throw InputError("dense_subregion rectangle is empty");
      if (!(spec.subregion_fraction >= 0.0 && spec.subregion_fraction <= 1.0))
        throw InputError("subregion_fraction must lie in [0, 1]");
      for (std::size_t i = 0; i < spec.n; ++i) {
        if (stream.uniform() < spec.subregion_fraction) {
          out.push_back(uniform_in_rect(stream, spec.subregion_min_x, spec.subregion_min_y,
                                        spec.subregion_max_x, spec.subregion_max_y));
        } else {
          // uniform over the remainder of the square
          Point p = uniform_point(stream);
          while (p.x >= spec.subregion_min_x && p.x <= spec.subregion_max_x &&
                 p.y >= spec.subregion_min_y && p.y <= spec.subregion_max_y)
            p = uniform_point(stream);
          out.push_back(p);
        }
      }
      break;
    }

    case PatternKind::nested_density: {
      double total = spec.tier_mass[0] + spec.tier_mass[1] + spec.tier_mass[2];
      if (!(total > 0.0)) throw InputError("tier masses must be positive");
      const double c1 = spec.tier_mass[0] / total;
      const double c2 = c1 + spec.tier_mass[1] / total;
      for (std::size_t i = 0; i < spec.n; ++i) {
        const double u = stream.uniform();
        if (u < c1) {
          out.push_back(uniform_point(stream));
        } else if (u < c2) {
          out.push_back(uniform_in_rect(stream, 0.25, 0.25, 0.75, 0.75));
        } else {
          out.push_back(uniform_in_rect(stream, 0.375, 0.375, 0.625, 0.625));
        }
      }
      break;
    }

    case PatternKind::striped_gaps: {
      if (spec.stripe_count < 1) throw InputError("need at least one stripe");
      if (!(spec.stripe_width > 0.0)) throw InputError("stripe width must be positive");
      if (spec.stripe_count * spec.stripe_width >= 1.0)
        throw InputError("stripes cover the whole domain");
      auto in_stripe = [&](double y) {
        for (int s = 0; s < spec.stripe_count; ++s) {
          const double center = (s + 1.0) / (spec.stripe_count + 1.0);
          if (std::fabs(y - center) <= spec.stripe_width / 2.0) return true;
        }
        return false;
      };
      for (std::size_t i = 0; i < spec.n; ++i) {
        Point p = uniform_point(stream);
        while (in_stripe(p.y)) p = uniform_point(stream);
        out.push_back(p);
      }
      break;
    }

    case PatternKind::circular_clusters: {
      if (spec.cluster_count < 1) throw InputError("need at least one cluster");
      if (!(spec.cluster_radius > 0.0 && spec.cluster_radius <= 0.2))
        throw InputError("cluster radius must lie in (0, 0.2]");
      if (!(spec.cluster_fraction >= 0.0 && spec.cluster_fraction <= 1.0))
        throw InputError("cluster_fraction must lie in [0, 1]");
      // centers on a jittered grid, kept a radius away from the boundary
      PointList centers;
      {
        RandomStream center_stream(spec.seed, 1);
        const int cols = spec.cluster_count <= 3 ? spec.cluster_count : (spec.cluster_count + 1) / 2;
        const int rows = (spec.cluster_count + cols - 1) / cols;
        const double lo = spec.cluster_radius;
        const double hi = 1.0 - spec.cluster_radius;
        int made = 0;
        for (int r = 0; r < rows && made < spec.cluster_count; ++r) {
          for (int c = 0; c < cols && made < spec.cluster_count; ++c, ++made) {
            const double fx = cols == 1 ? 0.5 : static_cast<double>(c) / (cols - 1);
            const double fy = rows == 1 ? 0.5 : static_cast<double>(r) / (rows - 1);
            const double jx = center_stream.uniform(-0.03, 0.03);
            const double jy = center_stream.uniform(-0.03, 0.03);
            Point p{lo + fx * (hi - lo) + jx, lo + fy * (hi - lo) + jy};
            p.x = std::min(std::max(p.x, lo), hi);
            p.y = std::min(std::max(p.y, lo), hi);
            centers.push_back(p);
          }
        }
      }
      for (std::size_t i = 0; i < spec.n; ++i) {
        if (stream.uniform() < spec.cluster_fraction) {
          const std::size_t c = stream.below(centers.size());
          const double radius = spec.cluster_radius * std::sqrt(stream.uniform());
          const double angle = stream.uniform(0.0, 2.0 * 3.14159265358979323846);
          out.push_back({centers[c].x + radius * std::cos(angle),
                         centers[c].y + radius * std::sin(angle)});
        } else {
          out.push_back(uniform_point(stream));
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace vgp
