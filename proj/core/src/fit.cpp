#include "vgp/fit.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <utility>

#include "vgp/errors.hpp"
#include "vgp/normal.hpp"
#include "vgp/ordering.hpp"

namespace vgp {

namespace {

// Evaluate with up to three nugget inflations when the covariance comes
// out numerically indefinite.  Mutates `params` so later iterations keep
// the working nugget.
ProfiledLogLik evaluate_with_jitter(const ObjectiveModel& model, MaternParams& params,
                                    int& bumps) {
  for (int attempt = 0;; ++attempt) {
    try {
      return model.evaluate(params);
    } catch (const NotPositiveDefinite&) {
      if (attempt >= 3) throw;
      params.nugget = std::max(params.nugget * 10.0, 1e-10);
      ++bumps;
    }
  }
}

double sup_norm(const std::array<double, 4>& g) {
  double m = 0.0;
  for (double v : g) m = std::max(m, std::fabs(v));
  return m;
}

// Solve (F + ridge I) d = g for the scoring direction.
std::array<double, 4> scoring_direction(const DenseMatrix& info,
                                        const std::array<double, 4>& grad) {
  double trace = 0.0;
  for (int j = 0; j < 4; ++j) trace += info(j, j);
  const double ridge = 1e-8 * (trace / 4.0 + 1.0);

  DenseMatrix damped = info;
  for (int j = 0; j < 4; ++j) damped(j, j) += ridge;
  std::vector<double> rhs(grad.begin(), grad.end());
  std::vector<double> d;
  try {
    d = cholesky(damped).solve(rhs);
  } catch (const NotPositiveDefinite&) {
    // fall back to the raw gradient scaled to unit sup-norm
    const double scale = sup_norm(grad);
    d = rhs;
    if (scale > 0.0)
      for (auto& v : d) v /= scale;
  }
  return {d[0], d[1], d[2], d[3]};
}

struct StageOutcome {
  MaternParams params;
  std::vector<double> beta;
  DenseMatrix beta_precision;
  double log_lik = 0.0;
  int iterations = 0;
  bool converged = false;
};

StageOutcome run_stage(const ObjectiveModel& model, MaternParams start,
                       const FitOptions& opts, int stage_index, FitResult& accum) {
  const WorkingTransform& tf = opts.transform;
  StageOutcome out;
  out.params = start;

  ProfiledLogLik center = evaluate_with_jitter(model, out.params, accum.nugget_bumps);
  out.log_lik = center.log_lik;
  out.beta = center.beta;
  out.beta_precision = std::move(center.beta_precision);

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    const GradientInfo gi =
        fd_gradient_information(model, out.params, out.beta, tf, opts.fd_step);
    if (sup_norm(gi.gradient) <= opts.grad_tol) {
      out.converged = true;
      break;
    }

    const std::array<double, 4> w = tf.to_working(out.params);
    const std::array<double, 4> dir = scoring_direction(gi.information, gi.gradient);

    MaternParams accepted_params;
    ProfiledLogLik accepted_eval;
    double used_scale = 0.0;
    bool accepted = false;

    double scale = 1.0;
    for (int halving = 0; halving <= opts.max_step_halvings && !accepted; ++halving) {
      std::array<double, 4> cand = w;
      for (int j = 0; j < 4; ++j) cand[j] += scale * dir[j];
      const MaternParams cand_params = tf.to_natural(cand);
      try {
        ProfiledLogLik e = model.evaluate(cand_params);
        if (e.log_lik > out.log_lik && std::isfinite(e.log_lik)) {
          accepted = true;
          accepted_params = cand_params;
          accepted_eval = std::move(e);
          used_scale = scale;
        }
      } catch (const NotPositiveDefinite&) {
        // treat as a failed step
      }
      scale *= 0.5;
    }

    if (!accepted) {
      // plain gradient step at a small fixed length
      const double g_norm = std::sqrt(gi.gradient[0] * gi.gradient[0] +
                                      gi.gradient[1] * gi.gradient[1] +
                                      gi.gradient[2] * gi.gradient[2] +
                                      gi.gradient[3] * gi.gradient[3]);
      if (g_norm > 0.0) {
        std::array<double, 4> cand = w;
        for (int j = 0; j < 4; ++j) cand[j] += 1e-2 * gi.gradient[j] / g_norm;
        const MaternParams cand_params = tf.to_natural(cand);
        try {
          ProfiledLogLik e = model.evaluate(cand_params);
          if (e.log_lik > out.log_lik && std::isfinite(e.log_lik)) {
            accepted = true;
            accepted_params = cand_params;
            accepted_eval = std::move(e);
            used_scale = 1e-2 / g_norm;
          }
        } catch (const NotPositiveDefinite&) {
        }
      }
    }

    if (!accepted) {
      out.converged = true;  // no ascent direction improves the objective
      break;
    }

    const double improvement = accepted_eval.log_lik - out.log_lik;
    out.params = accepted_params;
    out.log_lik = accepted_eval.log_lik;
    out.beta = std::move(accepted_eval.beta);
    out.beta_precision = std::move(accepted_eval.beta_precision);
    ++out.iterations;

    if (opts.keep_trace)
      accum.trace.push_back({stage_index, iter, out.log_lik, used_scale, out.params});

    if (improvement <= opts.rel_tol * (1.0 + std::fabs(out.log_lik))) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

MaternParams initial_params(const Dataset& data) {
  if (data.size() < 30) throw DegenerateSample("need at least 30 observations to fit");
  double mean = 0.0;
  for (double v : data.values) mean += v;
  mean /= data.size();
  double var = 0.0;
  for (double v : data.values) var += (v - mean) * (v - mean);
  var /= data.size();
  if (!(var > 0.0)) throw DegenerateSample("response has zero variance");

  MaternParams p;
  p.sigma2 = 0.9 * var;
  p.nugget = 0.1 * var;
  p.range = 0.1 * BoundingBox::of(data.points).diagonal();
  if (!(p.range > 0.0)) throw DegenerateSample("all sites coincide");
  p.smoothness = 1.0;
  return p;
}

FitResult fit_objective_sequence(const std::vector<const ObjectiveModel*>& stages,
                                 const MaternParams& init, const FitOptions& options) {
  if (stages.empty()) throw Error("fit needs at least one objective");

  FitResult result;
  MaternParams params = init;
  for (std::size_t s = 0; s < stages.size(); ++s) {
    StageOutcome stage = run_stage(*stages[s], params, options, static_cast<int>(s), result);
    params = stage.params;
    result.iterations += stage.iterations;
    result.converged = stage.converged;
    result.log_lik = stage.log_lik;
    result.beta = stage.beta;
    if (s + 1 == stages.size() && !stage.beta.empty()) {
      const std::size_t p = stage.beta.size();
      result.beta_se.assign(p, std::numeric_limits<double>::quiet_NaN());
      try {
        const DenseMatrix cov = spd_inverse(stage.beta_precision);
        for (std::size_t j = 0; j < p; ++j)
          if (cov(j, j) > 0.0) result.beta_se[j] = std::sqrt(cov(j, j));
      } catch (const NotPositiveDefinite&) {
      }
    }
  }
  result.params = params;

  // delta-method standard errors from the final objective
  const ObjectiveModel& last = *stages.back();
  const WorkingTransform& tf = options.transform;
  const std::array<double, 4> w = tf.to_working(result.params);
  const double frac = 1.0 / (1.0 + std::exp(-w[2]));
  result.smoothness_at_boundary = frac < 1e-4 || frac > 1.0 - 1e-4;

  const GradientInfo gi =
      fd_gradient_information(last, result.params, result.beta, tf, options.fd_step);
  const std::array<double, 4> jac = tf.jacobian_diag(w);
  try {
    const DenseMatrix cov = spd_inverse(gi.information);
    for (int j = 0; j < 4; ++j) {
      const double v = cov(j, j);
      result.se[j] = v > 0.0 ? std::sqrt(v) * std::fabs(jac[j])
                             : std::numeric_limits<double>::quiet_NaN();
    }
  } catch (const NotPositiveDefinite&) {
    result.se.fill(std::numeric_limits<double>::quiet_NaN());
  }
  return result;
}

FitResult fit_exact(const Dataset& data, TrendKind trend, const FitOptions& options) {
  ExactModel model(data, make_design(data.points, trend));
  return fit_objective_sequence(
      {&model}, options.init ? *options.init : initial_params(data), options);
}

SequentialFitResult fit_sequential(const Dataset& data, TrendKind trend,
                                   const FitOptions& options) {
  SequentialFitResult out;
  out.order = maxmin_order(data.points);

  Dataset ordered;
  ordered.points = apply_permutation(data.points, out.order);
  ordered.values = apply_permutation(data.values, out.order);

  std::vector<std::unique_ptr<SequentialModel>> models;
  std::vector<const ObjectiveModel*> stages;
  for (int m : options.neighbor_stages) {
    SequentialModel::Options mo;
    mo.max_neighbors = m;
    mo.workers = options.workers;
    models.push_back(std::make_unique<SequentialModel>(
        ordered, make_design(ordered.points, trend), mo));
    stages.push_back(models.back().get());
  }
  out.fit = fit_objective_sequence(
      stages, options.init ? *options.init : initial_params(data), options);
  return out;
}

FitResult fit_blocks(const Dataset& data, TrendKind trend, int n_blocks,
                     std::uint64_t seed, const FitOptions& options) {
  if (n_blocks <= 0) n_blocks = default_block_count(data.size());
  BlockModel::Options bo;
  bo.workers = options.workers;
  BlockModel model(data, make_design(data.points, trend),
                   voronoi_partition(data.points, n_blocks, seed), bo);
  return fit_objective_sequence(
      {&model}, options.init ? *options.init : initial_params(data), options);
}

WaldSummary wald_test(double estimate, double standard_error) {
  WaldSummary s;
  if (!(standard_error > 0.0)) {
    s.z = std::numeric_limits<double>::quiet_NaN();
    s.p_value = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  s.z = estimate / standard_error;
  s.p_value = 2.0 * norm_cdf(-std::fabs(s.z));
  return s;
}

}  // namespace vgp
