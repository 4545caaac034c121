#include "vgp/matern.hpp"

#include <cmath>

#include "vgp/bessel.hpp"
#include "vgp/errors.hpp"

namespace vgp {

MaternCorrelation::MaternCorrelation(double range, double smoothness)
    : range_(range), smoothness_(smoothness) {
  if (!(range > 0.0)) throw Error("Matern range must be positive");
  if (!(smoothness > 0.0)) throw Error("Matern smoothness must be positive");
  log_range_ = std::log(range);
  prefactor_ = std::pow(2.0, 1.0 - smoothness) / std::tgamma(smoothness);
  if (smoothness == 0.5)
    closed_form_ = 1;
  else if (smoothness == 1.5)
    closed_form_ = 3;
  else if (smoothness == 2.5)
    closed_form_ = 5;
  else
    closed_form_ = 0;
}

double MaternCorrelation::operator()(double dist) const {
  if (dist <= 0.0) return 1.0;
  const double u = dist / range_;
  switch (closed_form_) {
    case 1:
      return std::exp(-u);
    case 3:
      return (1.0 + u) * std::exp(-u);
    case 5:
      return (1.0 + u + u * u / 3.0) * std::exp(-u);
    default:
      break;
  }
  const double value = prefactor_ * std::pow(u, smoothness_) * bessel_k(smoothness_, u);
  // guard rounding at the origin limit
  return value < 1.0 ? value : 1.0;
}

double MaternCorrelation::with_log(double dist, double log_dist) const {
  if (dist <= 0.0) return 1.0;
  const double u = dist / range_;
  switch (closed_form_) {
    case 1:
      return std::exp(-u);
    case 3:
      return (1.0 + u) * std::exp(-u);
    case 5:
      return (1.0 + u + u * u / 3.0) * std::exp(-u);
    default:
      break;
  }
  const double power = std::exp(smoothness_ * (log_dist - log_range_));
  const double value = prefactor_ * power * bessel_k(smoothness_, u);
  return value < 1.0 ? value : 1.0;
}

double matern_correlation(double dist, double range, double smoothness) {
  return MaternCorrelation(range, smoothness)(dist);
}

DenseMatrix covariance_matrix(const PointList& points, const MaternParams& p) {
  const MaternCorrelation corr(p.range, p.smoothness);
  const std::size_t n = points.size();
  DenseMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    c(i, i) = p.sigma2 + p.nugget;
    for (std::size_t j = 0; j < i; ++j) {
      const double v = p.sigma2 * corr(distance(points[i], points[j]));
      c(i, j) = v;
      c(j, i) = v;
    }
  }
  return c;
}

std::vector<double> covariance_vector(const Point& site, const PointList& points,
                                      const MaternParams& p) {
  const MaternCorrelation corr(p.range, p.smoothness);
  std::vector<double> v(points.size());
  for (std::size_t i = 0; i < points.size(); ++i)
    v[i] = p.sigma2 * corr(distance(site, points[i]));
  return v;
}

}  // namespace vgp
