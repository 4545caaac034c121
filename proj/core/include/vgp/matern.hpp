#pragma once

#include <vector>

#include "vgp/dense.hpp"
#include "vgp/point_set.hpp"

namespace vgp {

// Matern covariance parameters: partial sill sigma2, range phi (the
// distance is scaled as d / phi), smoothness nu, and nugget tau2 applied
// to the diagonal only.
struct MaternParams {
  double sigma2 = 1.0;
  double range = 0.1;
  double smoothness = 1.0;
  double nugget = 0.0;
};

// Correlation evaluator for fixed (range, smoothness).  Precomputes the
// normalizing constant and dispatches the half-integer closed forms, so it
// is cheap to call across many distances.
class MaternCorrelation {
 public:
  MaternCorrelation(double range, double smoothness);

  double range() const { return range_; }
  double smoothness() const { return smoothness_; }

  // rho(d) with rho(0) = 1
  double operator()(double dist) const;

  // Same value, but with log(dist) supplied by the caller.  Batch
  // evaluators that store log distances alongside distances skip a pow
  // per call this way; log_dist is ignored when dist <= 0.
  double with_log(double dist, double log_dist) const;

 private:
  double range_;
  double smoothness_;
  double log_range_;
  double prefactor_;   // 2^{1-nu} / Gamma(nu)
  int closed_form_;    // 2*nu when nu is in {1/2, 3/2, 5/2}, else 0
};

double matern_correlation(double dist, double range, double smoothness);

inline double matern_covariance(double dist, const MaternParams& p) {
  return p.sigma2 * matern_correlation(dist, p.range, p.smoothness);
}

// Marginal variance of a single observation.
inline double total_variance(const MaternParams& p) { return p.sigma2 + p.nugget; }

// Dense covariance matrix of the observations at the given sites; the
// nugget enters the diagonal only.
DenseMatrix covariance_matrix(const PointList& points, const MaternParams& p);

// Covariance between the latent field at `site` and the observations at
// `points` (nugget-free).
std::vector<double> covariance_vector(const Point& site, const PointList& points,
                                      const MaternParams& p);

}  // namespace vgp
