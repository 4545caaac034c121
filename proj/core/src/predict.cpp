#include "vgp/predict.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "vgp/errors.hpp"
#include "vgp/kdtree.hpp"
#include "vgp/normal.hpp"
#include "vgp/parallel.hpp"

namespace vgp {

namespace {

constexpr std::size_t kSiteChunk = 16;

struct KrigeValue {
  double mean_adjust = 0.0;  // c' C^-1 resid
  double variance = 0.0;
  bool clamped = false;
};

// Conditional Gaussian at `site` given the residuals at the neighbor
// indices.  The neighbor covariance carries the nugget on its diagonal;
// the cross covariances are noise free.  An indefinite neighbor matrix is
// retried with a tenfold nugget bump, three times, as in fitting.
KrigeValue krige_at(const PointList& points, const std::vector<double>& resid,
                    const std::vector<int>& idx, const Point& site,
                    const MaternParams& params, const MaternCorrelation& corr,
                    double target_variance) {
  const std::size_t k = idx.size();
  std::vector<double> mat(k * k);
  std::vector<double> cross(k);
  std::vector<double> values(k);

  double nugget = params.nugget;
  for (int attempt = 0;; ++attempt) {
    for (std::size_t a = 0; a < k; ++a) {
      const Point& pa = points[static_cast<std::size_t>(idx[a])];
      double* row = mat.data() + a * k;
      for (std::size_t b = 0; b < a; ++b)
        row[b] = params.sigma2 *
                 corr(distance(pa, points[static_cast<std::size_t>(idx[b])]));
      row[a] = params.sigma2 + nugget;
      cross[a] = params.sigma2 * corr(distance(site, pa));
      values[a] = resid[static_cast<std::size_t>(idx[a])];
    }
    try {
      cholesky_in_place(mat.data(), k);
      break;
    } catch (const NotPositiveDefinite&) {
      if (attempt >= 3) throw;
      nugget = std::max(nugget * 10.0, 1e-10);
    }
  }

  forward_solve_in_place(mat.data(), k, cross.data());
  forward_solve_in_place(mat.data(), k, values.data());

  KrigeValue out;
  double wy = 0.0, ww = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    wy += cross[a] * values[a];
    ww += cross[a] * cross[a];
  }
  out.mean_adjust = wy;
  out.variance = target_variance - ww;
  if (out.variance < 0.0) {
    out.variance = 0.0;
    out.clamped = true;
  }
  return out;
}

PredictionSet make_empty_set(const PointList& pred, double alpha) {
  PredictionSet out;
  out.locations = pred;
  out.alpha = alpha;
  const std::size_t n = pred.size();
  out.mean.assign(n, 0.0);
  out.sd.assign(n, 0.0);
  out.lower.assign(n, 0.0);
  out.upper.assign(n, 0.0);
  out.flag.assign(n, kPredictOk);
  return out;
}

void fill_interval(PredictionSet& set, std::size_t i, double mean, double sd, int flag,
                   double z) {
  set.mean[i] = mean;
  set.sd[i] = sd;
  set.lower[i] = mean - z * sd;
  set.upper[i] = mean + z * sd;
  set.flag[i] = flag;
}

}  // namespace

PredictionSet kriging_predict(const Dataset& data, const MaternParams& params,
                              const PointList& pred, const PredictOptions& options) {
  if (data.size() == 0) throw Error("prediction needs observed data");
  if (options.m_pred < 1) throw Error("m_pred must be at least 1");

  const std::vector<double> data_trend = trend_values(data.points, options.trend);
  const std::vector<double> site_trend = trend_values(pred, options.trend);
  std::vector<double> resid(data.size());
  for (std::size_t i = 0; i < resid.size(); ++i)
    resid[i] = data.values[i] - data_trend[i];

  const KdTree tree(data.points);
  const MaternCorrelation corr(params.range, params.smoothness);
  const double target_variance =
      options.latent ? params.sigma2 : params.sigma2 + params.nugget;
  const double z = norm_quantile(1.0 - options.alpha / 2.0);

  PredictionSet out = make_empty_set(pred, options.alpha);
  parallel_for(pred.size(), kSiteChunk, options.workers, [&](std::size_t i) {
    const std::vector<int> idx = tree.nearest(pred[i], options.m_pred);
    const KrigeValue kv =
        krige_at(data.points, resid, idx, pred[i], params, corr, target_variance);
    fill_interval(out, i, site_trend[i] + kv.mean_adjust, std::sqrt(kv.variance),
                  kv.clamped ? kPredictVarianceClamped : kPredictOk, z);
  });
  return out;
}

PredictionSet local_gaussian_predict(const Dataset& data, const PointList& pred,
                                     const LocalWindowOptions& options) {
  if (data.size() < 2) throw DegenerateSample("need at least two observations");
  if (!(options.half_width > 0.0)) throw Error("window half width must be positive");
  if (options.cap < 2) throw Error("window cap must be at least 2");

  double global_mean = 0.0;
  for (double v : data.values) global_mean += v;
  global_mean /= data.size();
  double global_var = 0.0;
  for (double v : data.values) global_var += (v - global_mean) * (v - global_mean);
  global_var /= (data.size() - 1);
  const double global_sd = std::sqrt(global_var);

  const KdTree tree(data.points);
  const double z = norm_quantile(1.0 - options.alpha / 2.0);

  PredictionSet out = make_empty_set(pred, options.alpha);
  parallel_for(pred.size(), kSiteChunk, options.workers, [&](std::size_t i) {
    std::vector<int> nb = tree.within_box(pred[i], options.half_width);
    if (nb.size() > static_cast<std::size_t>(options.cap))
      nb.resize(static_cast<std::size_t>(options.cap));
    if (nb.size() < 2) {
      fill_interval(out, i, global_mean, global_sd, kPredictGlobalFallback, z);
      return;
    }
    double mean = 0.0;
    for (int j : nb) mean += data.values[static_cast<std::size_t>(j)];
    mean /= nb.size();
    double var = 0.0;
    for (int j : nb) {
      const double d = data.values[static_cast<std::size_t>(j)] - mean;
      var += d * d;
    }
    var /= (nb.size() - 1);
    fill_interval(out, i, mean, std::sqrt(var), kPredictOk, z);
  });
  return out;
}

PredictionSet local_krige_predict(const Dataset& data, const MaternParams& params,
                                  const PointList& pred, const TrendFit& trend,
                                  const LocalWindowOptions& options) {
  if (data.size() == 0) throw Error("prediction needs observed data");
  if (!(options.half_width > 0.0)) throw Error("window half width must be positive");
  if (options.cap < 2) throw Error("window cap must be at least 2");

  const std::vector<double> data_trend = trend_values(data.points, trend);
  const std::vector<double> site_trend = trend_values(pred, trend);
  std::vector<double> resid(data.size());
  for (std::size_t i = 0; i < resid.size(); ++i)
    resid[i] = data.values[i] - data_trend[i];

  const KdTree tree(data.points);
  const MaternCorrelation corr(params.range, params.smoothness);
  const double target_variance = params.sigma2 + params.nugget;
  const double marginal_sd = std::sqrt(target_variance);
  const double z = norm_quantile(1.0 - options.alpha / 2.0);

  PredictionSet out = make_empty_set(pred, options.alpha);
  parallel_for(pred.size(), kSiteChunk, options.workers, [&](std::size_t i) {
    std::vector<int> nb = tree.within_box(pred[i], options.half_width);
    if (nb.size() > static_cast<std::size_t>(options.cap))
      nb.resize(static_cast<std::size_t>(options.cap));
    if (nb.size() < 2) {
      fill_interval(out, i, site_trend[i], marginal_sd, kPredictGlobalFallback, z);
      return;
    }
    const KrigeValue kv =
        krige_at(data.points, resid, nb, pred[i], params, corr, target_variance);
    fill_interval(out, i, site_trend[i] + kv.mean_adjust, std::sqrt(kv.variance),
                  kv.clamped ? kPredictVarianceClamped : kPredictOk, z);
  });
  return out;
}

}  // namespace vgp
