#pragma once

#include <cstddef>
#include <vector>

namespace vgp {

// Skew-normal distribution in the (location, scale, shape) parameterization:
// density (2/scale) phi(z) Phi(shape * z) with z = (x - location) / scale.
struct SkewNormalParams {
  double location = 0.0;
  double scale = 1.0;
  double shape = 0.0;
};

// Owen's T function T(h, a).
double owens_t(double h, double a);

double sn_pdf(double x, const SkewNormalParams& p);
double sn_log_pdf(double x, const SkewNormalParams& p);
// CDF via Phi(z) - 2 T(z, shape).
double sn_cdf(double x, const SkewNormalParams& p);
// Inverse CDF by bisection.
double sn_quantile(double prob, const SkewNormalParams& p);

double sn_mean(const SkewNormalParams& p);
double sn_variance(const SkewNormalParams& p);

struct SkewNormalFit {
  SkewNormalParams params;
  double log_lik = 0.0;
  bool converged = false;
};

// Fit by maximum likelihood: moment-matched starting values refined with a
// Nelder-Mead search.  Requires at least 10 observations with positive
// sample variance.
SkewNormalFit sn_fit(const std::vector<double>& data);

}  // namespace vgp
