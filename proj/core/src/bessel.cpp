#include "vgp/bessel.hpp"

#include <cmath>
#include <limits>

#include "vgp/errors.hpp"

namespace vgp {
namespace {

constexpr double kPi = 3.14159265358979323846;

// K_{k+1/2}(x) from K_{1/2} and the three-term recurrence; exact up to
// rounding.
double half_integer_k(int k, double x) {
  const double k_half = std::sqrt(kPi / (2.0 * x)) * std::exp(-x);
  if (k == 0) return k_half;
  double lower = k_half;                    // order 1/2
  double upper = k_half * (1.0 + 1.0 / x);  // order 3/2
  for (int j = 1; j < k; ++j) {
    const double next = lower + (2.0 * j + 1.0) / x * upper;
    lower = upper;
    upper = next;
  }
  return upper;
}

// gam1 = [1/Gamma(1-mu) - 1/Gamma(1+mu)] / (2 mu) and
// gam2 = [1/Gamma(1-mu) + 1/Gamma(1+mu)] / 2 for |mu| <= 1/2.
// gam1 cancels catastrophically near mu = 0, so a short Taylor series
// takes over there.
void reciprocal_gamma_terms(double mu, double& gam1, double& gam2,
                            double& inv_gamma_plus, double& inv_gamma_minus) {
  inv_gamma_plus = 1.0 / std::tgamma(1.0 + mu);
  inv_gamma_minus = 1.0 / std::tgamma(1.0 - mu);
  gam2 = 0.5 * (inv_gamma_minus + inv_gamma_plus);
  if (std::fabs(mu) < 1e-4) {
    constexpr double euler = 0.5772156649015329;
    constexpr double zeta3 = 1.2020569031595943;
    // odd Taylor coefficients of 1/Gamma(1+t)
    const double b3 = euler * euler * euler / 6.0 - euler * kPi * kPi / 12.0 + zeta3 / 3.0;
    gam1 = -(euler + b3 * mu * mu);
  } else {
    gam1 = (inv_gamma_minus - inv_gamma_plus) / (2.0 * mu);
  }
}

// Temme's series for K_mu and K_{mu+1}, |mu| <= 1/2, 0 < x <= 2.
void series_k(double mu, double x, double& k_mu, double& k_mu1) {
  const double eps = std::numeric_limits<double>::epsilon();
  double gam1, gam2, inv_gp, inv_gm;
  reciprocal_gamma_terms(mu, gam1, gam2, inv_gp, inv_gm);

  const double half_x = 0.5 * x;
  const double log_term = -std::log(half_x);  // log(2/x)
  const double sigma = mu * log_term;
  const double pi_mu = kPi * mu;
  const double sin_ratio = std::fabs(pi_mu) < 1e-30 ? 1.0 : pi_mu / std::sin(pi_mu);
  const double sinh_ratio = std::fabs(sigma) < 1e-30 ? 1.0 : std::sinh(sigma) / sigma;

  double f = sin_ratio * (gam1 * std::cosh(sigma) + gam2 * sinh_ratio * log_term);
  double p = 0.5 * std::exp(sigma) / inv_gp;    // (x/2)^{-mu} Gamma(1+mu) / 2
  double q = 0.5 / (std::exp(sigma) * inv_gm);  // (x/2)^{+mu} Gamma(1-mu) / 2
  double c = 1.0;
  const double x2q = half_x * half_x;
  double sum0 = f;
  double sum1 = p;
  for (int i = 1; i <= 1000; ++i) {
    f = (i * f + p + q) / (i * i - mu * mu);
    c *= x2q / i;
    p /= (i - mu);
    q /= (i + mu);
    const double del = c * f;
    sum0 += del;
    sum1 += c * (p - i * f);
    if (std::fabs(del) < std::fabs(sum0) * eps) break;
  }
  k_mu = sum0;
  k_mu1 = sum1 * 2.0 / x;
}

// Steed-style continued fraction for K_mu and K_{mu+1}, |mu| <= 1/2,
// x > 2 (Thompson-Barnett CF2).
void fraction_k(double mu, double x, double& k_mu, double& k_mu1) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double a1 = 0.25 - mu * mu;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delta_h = d;
  double q_prev = 0.0;
  double q_cur = 1.0;
  double q_sum = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q_sum * delta_h;
  for (int i = 2; i <= 10000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double q_next = (q_prev - b * q_cur) / a;
    q_prev = q_cur;
    q_cur = q_next;
    q_sum += c * q_next;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delta_h = (b * d - 1.0) * delta_h;
    h += delta_h;
    const double del_s = q_sum * delta_h;
    s += del_s;
    if (std::fabs(del_s) <= std::fabs(s) * eps) break;
  }
  h = a1 * h;
  k_mu = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
  k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
}

// Large-x expansion evaluated directly at the target order.  Returns false
// if the (asymptotic) series shows signs of divergence before converging.
bool expansion_k(double order, double x, double& out) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double four_nu2 = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  double prev_abs = std::numeric_limits<double>::max();
  for (int k = 1; k <= 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (four_nu2 - odd * odd) / (8.0 * k * x);
    const double abs_term = std::fabs(term);
    if (abs_term >= prev_abs) return false;
    sum += term;
    prev_abs = abs_term;
    if (abs_term < std::fabs(sum) * eps) {
      out = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) * sum;
      return true;
    }
  }
  return false;
}

}  // namespace

double bessel_k(double order, double x) {
  if (!(x > 0.0)) throw Error("bessel_k requires x > 0");
  const double nu = std::fabs(order);

  const double half_steps = nu - 0.5;
  const double rounded = std::round(half_steps);
  if (half_steps == rounded && rounded >= 0.0 && rounded < 512.0)
    return half_integer_k(static_cast<int>(rounded), x);

  if (x >= 32.0) {
    double v;
    if (expansion_k(nu, x, v)) return v;
  }

  const int steps = static_cast<int>(nu + 0.5);
  const double mu = nu - steps;  // fractional order in [-1/2, 1/2]
  double k_mu, k_mu1;
  if (x <= 2.0)
    series_k(mu, x, k_mu, k_mu1);
  else
    fraction_k(mu, x, k_mu, k_mu1);

  if (steps == 0) return k_mu;
  double lower = k_mu;
  double upper = k_mu1;
  for (int j = 1; j < steps; ++j) {
    const double next = lower + 2.0 * (mu + j) / x * upper;
    lower = upper;
    upper = next;
  }
  return upper;
}

}  // namespace vgp
