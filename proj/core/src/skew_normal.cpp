#include "vgp/skew_normal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "vgp/errors.hpp"
#include "vgp/normal.hpp"

namespace vgp {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre rule on [-1, 1]; nodes found by Newton iteration on the
// Legendre polynomial.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n) : nodes(n), weights(n) {
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = x;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-15) break;
      }
      nodes[i] = x;
      nodes[n - 1 - i] = -x;
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      weights[i] = w;
      weights[n - 1 - i] = w;
    }
  }
};

const GaussLegendre& rule64() {
  static const GaussLegendre r(64);
  return r;
}

// Integral form of Owen's T on [0, a] with 0 <= a <= 1.
double owens_t_integral(double h, double a) {
  const GaussLegendre& gl = rule64();
  const double half_h2 = 0.5 * h * h;
  const double mid = 0.5 * a;
  double s = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double t = mid + mid * gl.nodes[i];
    const double one_t2 = 1.0 + t * t;
    s += gl.weights[i] * std::exp(-half_h2 * one_t2) / one_t2;
  }
  return s * mid / (2.0 * kPi);
}

// Standard Nelder-Mead simplex minimization with a hard evaluation budget.
std::pair<std::vector<double>, double> nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const std::vector<double>& step, int max_evals) {
  const std::size_t dim = x0.size();
  struct Vertex {
    std::vector<double> x;
    double value;
  };
  std::vector<Vertex> simplex;
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };

  simplex.push_back({x0, eval(x0)});
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<double> x = x0;
    x[i] += step[i];
    simplex.push_back({x, eval(x)});
  }
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.value < b.value; };

  while (evals < max_evals) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    const Vertex& best = simplex.front();
    Vertex& worst = simplex.back();
    const double second_worst = simplex[dim - 1].value;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t v = 0; v < dim; ++v)
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v].x[i] / dim;

    auto blend = [&](double coef) {
      std::vector<double> x(dim);
      for (std::size_t i = 0; i < dim; ++i)
        x[i] = centroid[i] + coef * (worst.x[i] - centroid[i]);
      return x;
    };

    std::vector<double> reflected = blend(-1.0);
    const double fr = eval(reflected);
    if (fr < best.value) {
      std::vector<double> expanded = blend(-2.0);
      const double fe = eval(expanded);
      if (fe < fr)
        worst = {expanded, fe};
      else
        worst = {reflected, fr};
    } else if (fr < second_worst) {
      worst = {reflected, fr};
    } else {
      const bool outside = fr < worst.value;
      std::vector<double> contracted = blend(outside ? -0.5 : 0.5);
      const double fc = eval(contracted);
      if (fc < (outside ? fr : worst.value)) {
        worst = {contracted, fc};
      } else {
        // shrink toward the best vertex
        for (std::size_t v = 1; v <= dim; ++v) {
          for (std::size_t i = 0; i < dim; ++i)
            simplex[v].x[i] = best.x[i] + 0.5 * (simplex[v].x[i] - best.x[i]);
          simplex[v].value = eval(simplex[v].x);
          if (evals >= max_evals) break;
        }
      }
    }

    double spread = 0.0;
    for (std::size_t v = 1; v <= dim; ++v)
      spread = std::max(spread, std::fabs(simplex[v].value - simplex[0].value));
    if (spread < 1e-10 * (1.0 + std::fabs(simplex[0].value))) break;
  }

  std::sort(simplex.begin(), simplex.end(), by_value);
  return {simplex.front().x, simplex.front().value};
}

}  // namespace

double owens_t(double h, double a) {
  if (a == 0.0 || std::isnan(a)) return 0.0;
  const double sign_a = a < 0.0 ? -1.0 : 1.0;
  const double abs_a = std::fabs(a);
  const double abs_h = std::fabs(h);

  if (abs_h == 0.0) return sign_a * std::atan(abs_a) / (2.0 * kPi);

  double t;
  if (abs_a <= 1.0) {
    t = owens_t_integral(abs_h, abs_a);
  } else {
    // T(h, a) = Phi(h)/2 + Phi(ah)/2 - Phi(h) Phi(ah) - T(ah, 1/a)
    const double ah = abs_a * abs_h;
    const double ph = norm_cdf(abs_h);
    const double pah = norm_cdf(ah);
    t = 0.5 * (ph + pah) - ph * pah - owens_t_integral(ah, 1.0 / abs_a);
  }
  return sign_a * t;
}

double sn_pdf(double x, const SkewNormalParams& p) {
  const double z = (x - p.location) / p.scale;
  return 2.0 / p.scale * norm_pdf(z) * norm_cdf(p.shape * z);
}

double sn_log_pdf(double x, const SkewNormalParams& p) {
  const double z = (x - p.location) / p.scale;
  return std::log(2.0 / p.scale) - 0.5 * z * z - 0.5 * kLog2Pi + log_norm_cdf(p.shape * z);
}

double sn_cdf(double x, const SkewNormalParams& p) {
  const double z = (x - p.location) / p.scale;
  return norm_cdf(z) - 2.0 * owens_t(z, p.shape);
}

double sn_quantile(double prob, const SkewNormalParams& p) {
  if (!(prob > 0.0 && prob < 1.0)) throw Error("sn_quantile requires prob in (0, 1)");
  double lo = -45.0;
  double hi = 45.0;
  SkewNormalParams std_p{0.0, 1.0, p.shape};
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sn_cdf(mid, std_p) < prob)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-12) break;
  }
  return p.location + p.scale * 0.5 * (lo + hi);
}

double sn_mean(const SkewNormalParams& p) {
  const double delta = p.shape / std::sqrt(1.0 + p.shape * p.shape);
  return p.location + p.scale * delta * std::sqrt(2.0 / kPi);
}

double sn_variance(const SkewNormalParams& p) {
  const double delta = p.shape / std::sqrt(1.0 + p.shape * p.shape);
  return p.scale * p.scale * (1.0 - 2.0 * delta * delta / kPi);
}

SkewNormalFit sn_fit(const std::vector<double>& data) {
  const std::size_t n = data.size();
  if (n < 10) throw DegenerateSample("sn_fit needs at least 10 observations");

  double mean = 0.0;
  for (double v : data) mean += v;
  mean /= n;
  double m2 = 0.0;
  double m3 = 0.0;
  for (double v : data) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  if (!(m2 > 0.0)) throw DegenerateSample("sn_fit needs positive sample variance");

  // Moment-matched start.  Sample skewness is clamped inside the
  // attainable range so the inversion below stays defined.
  const double max_skew = 0.99 * 0.9952717464311565;
  double skew = std::clamp(m3 / std::pow(m2, 1.5), -max_skew, max_skew);
  const double r = std::pow(2.0 * std::fabs(skew) / (4.0 - kPi), 2.0 / 3.0);
  const double mu_z2 = r / (1.0 + r);
  const double mu_z = (skew < 0.0 ? -1.0 : 1.0) * std::sqrt(mu_z2);
  const double delta = mu_z * std::sqrt(kPi / 2.0);
  const double alpha0 = delta / std::sqrt(std::max(1.0 - delta * delta, 1e-6));
  const double omega0 = std::sqrt(m2 / (1.0 - mu_z2));
  const double xi0 = mean - omega0 * mu_z;

  auto neg_log_lik = [&](const std::vector<double>& q) {
    SkewNormalParams sp{q[0], std::exp(q[1]), q[2]};
    double s = 0.0;
    for (double v : data) s -= sn_log_pdf(v, sp);
    return std::isfinite(s) ? s : std::numeric_limits<double>::max();
  };

  const std::vector<double> start{xi0, std::log(omega0), alpha0};
  const double start_value = neg_log_lik(start);
  const std::vector<double> step{0.1 * omega0, 0.1, 0.25 * (1.0 + std::fabs(alpha0))};
  auto [best, value] = nelder_mead(neg_log_lik, start, step, 500);

  SkewNormalFit fit;
  if (value <= start_value) {
    fit.params = {best[0], std::exp(best[1]), best[2]};
    fit.log_lik = -value;
    fit.converged = true;
  } else {
    fit.params = {xi0, omega0, alpha0};
    fit.log_lik = -start_value;
    fit.converged = false;
  }
  return fit;
}

}  // namespace vgp
