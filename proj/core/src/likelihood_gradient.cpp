#include <algorithm>
#include <cmath>

#include "vgp/errors.hpp"
#include "vgp/fit.hpp"

namespace vgp {

std::array<double, 4> WorkingTransform::to_working(const MaternParams& p) const {
  const double span = smoothness_hi - smoothness_lo;
  double frac = (p.smoothness - smoothness_lo) / span;
  frac = std::clamp(frac, 1e-12, 1.0 - 1e-12);
  return {std::log(p.sigma2), std::log(p.range), std::log(frac / (1.0 - frac)),
          std::log(std::max(p.nugget, nugget_floor))};
}

MaternParams WorkingTransform::to_natural(const std::array<double, 4>& w) const {
  MaternParams p;
  p.sigma2 = std::exp(w[0]);
  p.range = std::exp(w[1]);
  const double q = 1.0 / (1.0 + std::exp(-w[2]));
  p.smoothness = smoothness_lo + (smoothness_hi - smoothness_lo) * q;
  p.nugget = std::exp(w[3]);
  return p;
}

std::array<double, 4> WorkingTransform::jacobian_diag(const std::array<double, 4>& w) const {
  const double q = 1.0 / (1.0 + std::exp(-w[2]));
  return {std::exp(w[0]), std::exp(w[1]), (smoothness_hi - smoothness_lo) * q * (1.0 - q),
          std::exp(w[3])};
}

GradientInfo fd_gradient_information(const ObjectiveModel& model, const MaternParams& params,
                                     const std::vector<double>& beta,
                                     const WorkingTransform& transform, double step) {
  const std::size_t n_comp = model.component_count();
  const std::array<double, 4> center = transform.to_working(params);

  // per-component scores, one column per working coordinate
  std::vector<std::array<double, 4>> scores(n_comp, {0.0, 0.0, 0.0, 0.0});

  // sill and nugget first: they keep (range, smoothness) fixed, letting the
  // objective reuse its cached correlation values from the center
  static constexpr int kOrder[4] = {0, 3, 1, 2};
  for (int j : kOrder) {
    double h = step;
    bool done = false;
    for (int attempt = 0; attempt < 2 && !done; ++attempt) {
      std::array<double, 4> plus = center;
      std::array<double, 4> minus = center;
      plus[j] += h;
      minus[j] -= h;
      try {
        const std::vector<double> up = model.component_log_liks(transform.to_natural(plus), beta);
        const std::vector<double> down =
            model.component_log_liks(transform.to_natural(minus), beta);
        for (std::size_t i = 0; i < n_comp; ++i) scores[i][j] = (up[i] - down[i]) / (2.0 * h);
        done = true;
      } catch (const NotPositiveDefinite&) {
        h /= 10.0;  // retry closer to the center
      }
    }
    // if both attempts failed the column stays zero
  }

  GradientInfo out;
  out.information = DenseMatrix(4, 4);
  for (std::size_t i = 0; i < n_comp; ++i) {
    for (int j = 0; j < 4; ++j) {
      out.gradient[j] += scores[i][j];
      for (int l = 0; l <= j; ++l) out.information(j, l) += scores[i][j] * scores[i][l];
    }
  }
  for (int j = 0; j < 4; ++j)
    for (int l = j + 1; l < 4; ++l) out.information(j, l) = out.information(l, j);
  return out;
}

}  // namespace vgp
