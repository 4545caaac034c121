#include "vgp/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "vgp/decluster.hpp"
#include "vgp/errors.hpp"
#include "vgp/ordering.hpp"
#include "vgp/parallel.hpp"
#include "vgp/rng.hpp"

namespace vgp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double empirical_quantile(const std::vector<double>& sorted, double prob) {
  const std::size_t n = sorted.size();
  const double pos = prob * (n - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= n) return sorted.back();
  const double frac = pos - lo;
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

PointList gather_points(const PointList& points, const std::vector<int>& idx) {
  PointList out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(points[static_cast<std::size_t>(i)]);
  return out;
}

// Replicate worker state: the stage objectives over a fixed site
// subsample, rebuilt cheaply from the shared prototypes by copy.
struct StageSet {
  std::vector<SequentialModel> models;
  std::vector<const ObjectiveModel*> pointers() const {
    std::vector<const ObjectiveModel*> p;
    p.reserve(models.size());
    for (const auto& m : models) p.push_back(&m);
    return p;
  }
};

}  // namespace

SnInterval sn_interval(const std::vector<double>& samples, double alpha) {
  if (samples.size() < 50) throw DegenerateSample("sn_interval needs at least 50 samples");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error("alpha must lie in (0, 1)");

  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());

  SnInterval out;
  out.empirical_lower = empirical_quantile(sorted, alpha / 2.0);
  out.empirical_upper = empirical_quantile(sorted, 1.0 - alpha / 2.0);

  bool ok = true;
  try {
    const SkewNormalFit fit = sn_fit(samples);
    out.params = fit.params;
    out.lower = sn_quantile(alpha / 2.0, fit.params);
    out.upper = sn_quantile(1.0 - alpha / 2.0, fit.params);
    ok = std::isfinite(out.lower) && std::isfinite(out.upper) && out.lower < out.upper;
  } catch (const DegenerateSample&) {
    throw;
  } catch (const Error&) {
    ok = false;
  }
  if (!ok) {
    out.used_empirical = true;
    out.lower = out.empirical_lower;
    out.upper = out.empirical_upper;
  }
  return out;
}

BootstrapResult bootstrap_ci(const Dataset& data, const MaternParams& params,
                             const BootstrapOptions& options) {
  if (options.n_reps < 50) throw Error("bootstrap needs at least 50 replicates");
  if (!(options.alpha > 0.0 && options.alpha < 1.0)) throw Error("alpha must lie in (0, 1)");
  if (data.size() < 2) throw DegenerateSample("bootstrap needs at least two observations");

  const std::size_t n = data.size();
  const std::size_t sub_size = std::min<std::size_t>(options.subsample_size, n);
  if (sub_size > options.dense_guard)
    throw SizeGuardError("bootstrap replicate simulation", sub_size, options.dense_guard);

  double radius = options.weight_radius;
  if (radius <= 0.0) radius = 0.05 * BoundingBox::of(data.points).diagonal();
  const std::vector<double> weights = decluster_weights(data.points, radius);

  const int n_reps = options.n_reps;
  BootstrapResult result;
  result.replicate_estimates = DenseMatrix(static_cast<std::size_t>(n_reps), 4, kNaN);

  FitOptions refit = options.refit;
  refit.workers = 1;  // parallelism lives across replicates

  auto run_replicate = [&](const CholeskyFactor& chol, const std::vector<int>& order,
                           StageSet& stages, RandomStream& stream, std::size_t rep) {
    const std::size_t k = chol.dim();
    std::vector<double> z(k);
    for (auto& v : z) v = stream.normal();
    std::vector<double> y(k);
    const DenseMatrix& l = chol.matrix();
    for (std::size_t i = 0; i < k; ++i) {
      const double* row = l.row(i);
      double s = 0.0;
      for (std::size_t j = 0; j <= i; ++j) s += row[j] * z[j];
      y[i] = s;
    }
    for (auto& m : stages.models) m.set_values(apply_permutation(y, order));
    try {
      const FitResult fit = fit_objective_sequence(stages.pointers(), params, refit);
      result.replicate_estimates(rep, 0) = fit.params.sigma2;
      result.replicate_estimates(rep, 1) = fit.params.range;
      result.replicate_estimates(rep, 2) = fit.params.smoothness;
      result.replicate_estimates(rep, 3) = fit.params.nugget;
      return 0;
    } catch (const Error&) {
      return 1;
    }
  };

  int failed = 0;
  if (!options.resample_each_replicate) {
    // one weighted site subsample and one dense factorization, shared by
    // every replicate
    RandomStream sub_stream(options.seed, 0);
    result.subsample =
        weighted_subsample(weights, static_cast<int>(sub_size), sub_stream);
    const PointList sub_points = gather_points(data.points, result.subsample);
    const CholeskyFactor chol = cholesky(covariance_matrix(sub_points, params));
    const std::vector<int> order = maxmin_order(sub_points);
    const PointList ordered_points = apply_permutation(sub_points, order);

    StageSet prototype;
    for (int m : refit.neighbor_stages) {
      SequentialModel::Options mo;
      mo.max_neighbors = m;
      mo.workers = 1;
      Dataset stage_data;
      stage_data.points = ordered_points;
      stage_data.values.assign(ordered_points.size(), 0.0);
      prototype.models.emplace_back(std::move(stage_data),
                                    DenseMatrix(ordered_points.size(), 0), mo);
    }

    failed = parallel_map_reduce<int>(
        static_cast<std::size_t>(n_reps), 8, options.workers, 0,
        [&](std::size_t begin, std::size_t end) {
          StageSet stages = prototype;
          int bad = 0;
          for (std::size_t rep = begin; rep < end; ++rep) {
            RandomStream stream(options.seed, rep + 1);
            bad += run_replicate(chol, order, stages, stream, rep);
          }
          return bad;
        },
        [](int a, int b) { return a + b; });
  } else {
    failed = parallel_map_reduce<int>(
        static_cast<std::size_t>(n_reps), 1, options.workers, 0,
        [&](std::size_t begin, std::size_t end) {
          int bad = 0;
          for (std::size_t rep = begin; rep < end; ++rep) {
            RandomStream stream(options.seed, rep + 1);
            const std::vector<int> idx =
                weighted_subsample(weights, static_cast<int>(sub_size), stream);
            const PointList sub_points = gather_points(data.points, idx);
            const CholeskyFactor chol = cholesky(covariance_matrix(sub_points, params));
            const std::vector<int> order = maxmin_order(sub_points);
            const PointList ordered_points = apply_permutation(sub_points, order);
            StageSet stages;
            for (int m : refit.neighbor_stages) {
              SequentialModel::Options mo;
              mo.max_neighbors = m;
              mo.workers = 1;
              Dataset stage_data;
              stage_data.points = ordered_points;
              stage_data.values.assign(ordered_points.size(), 0.0);
              stages.models.emplace_back(std::move(stage_data),
                                         DenseMatrix(ordered_points.size(), 0), mo);
            }
            bad += run_replicate(chol, order, stages, stream, rep);
          }
          return bad;
        },
        [](int a, int b) { return a + b; });
  }

  result.n_failed = failed;
  result.unreliable = failed * 10 > n_reps;

  for (int j = 0; j < 4; ++j) {
    std::vector<double> column;
    column.reserve(static_cast<std::size_t>(n_reps));
    for (int r = 0; r < n_reps; ++r) {
      const double v = result.replicate_estimates(static_cast<std::size_t>(r),
                                                  static_cast<std::size_t>(j));
      if (std::isfinite(v)) column.push_back(v);
    }
    if (column.size() < 50)
      throw DegenerateSample("too few successful bootstrap replicates");
    result.intervals[static_cast<std::size_t>(j)] = sn_interval(column, options.alpha);
  }
  return result;
}

}  // namespace vgp
