#pragma once

#include <cmath>

namespace vgp {

inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr double kSqrt2Pi = 2.5066282746310002;
inline constexpr double kLog2Pi = 1.8378770664093453;

inline double norm_pdf(double z) { return std::exp(-0.5 * z * z) / kSqrt2Pi; }

inline double norm_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

// log Phi(z) with an asymptotic branch for the deep lower tail where
// erfc underflows.
inline double log_norm_cdf(double z) {
  if (z > -10.0) return std::log(norm_cdf(z));
  const double z2 = z * z;
  return -0.5 * z2 - std::log(-z * kSqrt2Pi) + std::log1p(-1.0 / z2 + 3.0 / (z2 * z2));
}

// Inverse standard normal CDF: rational initial guess refined with two
// Halley steps against erfc, giving close to full double accuracy.
double norm_quantile(double p);

}  // namespace vgp
