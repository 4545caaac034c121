#include <cmath>
#include <cstddef>
#include <vector>

#include "vgp/errors.hpp"
#include "vgp/kdtree.hpp"
#include "vgp/ordering.hpp"
#include "vgp/parallel.hpp"
#include "vgp/predict.hpp"
#include "vgp/rng.hpp"

namespace vgp {

namespace {

// Precomputed conditioning rule for one prediction site: regression
// weights onto the residuals at nearby observed sites and at prediction
// sites simulated before it, plus the conditional standard deviation.
struct SiteRule {
  std::vector<int> obs;      // indices into the observed data
  std::vector<int> sim;      // indices into the prediction sites
  std::vector<double> coef;  // weights, observed block then simulated block
  double sd = 0.0;
};

}  // namespace

CondSimDraws cond_sim(const Dataset& data, const MaternParams& params,
                      const PointList& pred, int n_sims, std::uint64_t seed,
                      const CondSimOptions& options) {
  if (data.size() == 0) throw Error("conditional simulation needs observed data");
  if (pred.empty()) throw Error("conditional simulation needs prediction sites");
  if (n_sims < 2) throw Error("n_sims must be at least 2");
  if (options.m_pred < 1) throw Error("m_pred must be at least 1");

  const std::size_t n_pred = pred.size();
  const std::vector<double> data_trend = trend_values(data.points, options.trend);
  const std::vector<double> site_trend = trend_values(pred, options.trend);
  std::vector<double> resid(data.size());
  for (std::size_t i = 0; i < resid.size(); ++i)
    resid[i] = data.values[i] - data_trend[i];

  const std::vector<int> order = maxmin_order(pred);
  const KdTree obs_tree(data.points);
  KdTree sim_tree(pred);
  sim_tree.reset_activation();

  const MaternCorrelation corr(params.range, params.smoothness);
  const double marginal = params.sigma2 + params.nugget;

  // one sequential pass builds the shared conditioning rules
  std::vector<SiteRule> rules(n_pred);
  for (std::size_t t = 0; t < n_pred; ++t) {
    const int j = order[t];
    const Point& site = pred[static_cast<std::size_t>(j)];
    SiteRule& rule = rules[static_cast<std::size_t>(j)];
    rule.obs = obs_tree.nearest(site, options.m_pred);
    rule.sim = sim_tree.nearest(site, options.m_pred);

    const std::size_t ko = rule.obs.size();
    const std::size_t ks = rule.sim.size();
    const std::size_t dim = ko + ks;

    PointList cond;
    cond.reserve(dim);
    for (int a : rule.obs) cond.push_back(data.points[static_cast<std::size_t>(a)]);
    for (int a : rule.sim) cond.push_back(pred[static_cast<std::size_t>(a)]);

    std::vector<double> mat(dim * dim);
    std::vector<double> cross(dim);
    double nugget = params.nugget;
    for (int attempt = 0;; ++attempt) {
      for (std::size_t a = 0; a < dim; ++a) {
        double* row = mat.data() + a * dim;
        for (std::size_t b = 0; b < a; ++b)
          row[b] = params.sigma2 * corr(distance(cond[a], cond[b]));
        row[a] = params.sigma2 + nugget;
        cross[a] = params.sigma2 * corr(distance(site, cond[a]));
      }
      try {
        cholesky_in_place(mat.data(), dim);
        break;
      } catch (const NotPositiveDefinite&) {
        if (attempt >= 3) throw;
        nugget = std::max(nugget * 10.0, 1e-10);
      }
    }

    // weights b solve (L L') b = cross; the variance uses the half-solve
    std::vector<double> half = cross;
    forward_solve_in_place(mat.data(), dim, half.data());
    double ww = 0.0;
    for (double h : half) ww += h * h;
    double variance = marginal - ww;
    if (variance < 0.0) variance = 0.0;
    rule.sd = std::sqrt(variance);

    rule.coef.assign(half.begin(), half.end());
    for (std::size_t a = dim; a-- > 0;) {
      double s = rule.coef[a];
      for (std::size_t b = a + 1; b < dim; ++b) s -= mat[b * dim + a] * rule.coef[b];
      rule.coef[a] = s / mat[a * dim + a];
    }

    sim_tree.activate(j);
  }

  CondSimDraws out;
  out.locations = pred;
  out.n_sims = n_sims;
  out.seed = seed;
  out.draws = DenseMatrix(static_cast<std::size_t>(n_sims), n_pred);

  parallel_for(static_cast<std::size_t>(n_sims), 1, options.workers, [&](std::size_t s) {
    RandomStream stream(seed, s);
    std::vector<double> sim_resid(n_pred, 0.0);
    for (std::size_t t = 0; t < n_pred; ++t) {
      const int j = order[t];
      const SiteRule& rule = rules[static_cast<std::size_t>(j)];
      double mean = 0.0;
      std::size_t c = 0;
      for (int a : rule.obs) mean += rule.coef[c++] * resid[static_cast<std::size_t>(a)];
      for (int a : rule.sim)
        mean += rule.coef[c++] * sim_resid[static_cast<std::size_t>(a)];
      sim_resid[static_cast<std::size_t>(j)] = mean + rule.sd * stream.normal();
      out.draws(s, static_cast<std::size_t>(j)) =
          site_trend[static_cast<std::size_t>(j)] + sim_resid[static_cast<std::size_t>(j)];
    }
  });
  return out;
}

}  // namespace vgp
