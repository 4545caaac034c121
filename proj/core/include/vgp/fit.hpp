#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "vgp/dataset.hpp"
#include "vgp/dense.hpp"
#include "vgp/likelihood.hpp"
#include "vgp/matern.hpp"

namespace vgp {

// Working coordinates for unconstrained optimization:
// [log sigma2, log range, scaled-logit smoothness, log nugget].
// Smoothness is confined to (smoothness_lo, smoothness_hi); the logit
// argument is clamped just inside (0, 1) so boundary values stay finite.
struct WorkingTransform {
  double smoothness_lo = 0.05;
  double smoothness_hi = 5.0;
  double nugget_floor = 1e-12;

  std::array<double, 4> to_working(const MaternParams& p) const;
  MaternParams to_natural(const std::array<double, 4>& w) const;
  // d(natural_j) / d(working_j), for delta-method standard errors
  std::array<double, 4> jacobian_diag(const std::array<double, 4>& w) const;
};

// Central-difference gradient of the profiled objective plus the empirical
// information matrix (sum of per-component score outer products), both in
// working coordinates.
struct GradientInfo {
  std::array<double, 4> gradient{};
  DenseMatrix information;
};

GradientInfo fd_gradient_information(const ObjectiveModel& model, const MaternParams& params,
                                     const std::vector<double>& beta,
                                     const WorkingTransform& transform, double step);

struct FitOptions {
  // neighbor counts of the warm-started refinement stages (sequential
  // objective only; other objectives run a single stage)
  std::vector<int> neighbor_stages = {10, 30, 60};
  int max_iter = 100;         // scoring iterations per stage
  double rel_tol = 1e-6;      // relative objective change declaring convergence
  double grad_tol = 1e-4;     // sup-norm of the working-coordinate gradient
  double fd_step = 1e-5;
  int max_step_halvings = 10;
  int workers = 0;
  bool keep_trace = false;
  std::optional<MaternParams> init;  // moment-based initial_params when absent
  WorkingTransform transform;
};

struct FitIterationRecord {
  int stage = 0;
  int iteration = 0;
  double log_lik = 0.0;
  double step_scale = 0.0;
  MaternParams params;
};

struct FitResult {
  MaternParams params;
  std::vector<double> beta;
  // standard errors of the profiled trend coefficients (inverse whitened
  // gram); empty for zero-mean fits, NaN entries on a singular gram
  std::vector<double> beta_se;
  double log_lik = 0.0;
  // delta-method standard errors on the natural scale, ordered
  // (sigma2, range, smoothness, nugget); NaN when the information matrix
  // is singular
  std::array<double, 4> se{};
  int iterations = 0;
  bool converged = false;
  bool smoothness_at_boundary = false;
  int nugget_bumps = 0;  // times the nugget was inflated to restore positive definiteness
  std::vector<FitIterationRecord> trace;
};

// Moment-based starting values: most of the sample variance on the sill,
// a tenth on the nugget, a tenth of the domain diagonal on the range.
MaternParams initial_params(const Dataset& data);

// Damped Fisher-scoring ascent over a sequence of objectives, warm
// starting every stage from the previous solution.
FitResult fit_objective_sequence(const std::vector<const ObjectiveModel*>& stages,
                                 const MaternParams& init, const FitOptions& options);

FitResult fit_exact(const Dataset& data, TrendKind trend, const FitOptions& options);

// Orders the data by maxmin_order internally; `order` reports the
// permutation that was used.
struct SequentialFitResult {
  FitResult fit;
  std::vector<int> order;
};
SequentialFitResult fit_sequential(const Dataset& data, TrendKind trend,
                                   const FitOptions& options);

// Composite-block fit over a seeded Voronoi partition; n_blocks <= 0 picks
// the one-block-per-500-points default.
FitResult fit_blocks(const Dataset& data, TrendKind trend, int n_blocks,
                     std::uint64_t seed, const FitOptions& options);

// Two-sided Wald test of a zero null.
struct WaldSummary {
  double z = 0.0;
  double p_value = 1.0;
};
WaldSummary wald_test(double estimate, double standard_error);

}  // namespace vgp
