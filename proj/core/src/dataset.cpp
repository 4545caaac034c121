#include "vgp/dataset.hpp"

#include "vgp/errors.hpp"

namespace vgp {

TrendKind trend_kind_from_string(const std::string& name) {
  if (name == "none") return TrendKind::none;
  if (name == "constant") return TrendKind::constant;
  if (name == "linear") return TrendKind::linear;
  throw InputError("unknown trend '" + name + "'; expected none, constant, or linear");
}

std::string to_string(TrendKind kind) {
  switch (kind) {
    case TrendKind::none:
      return "none";
    case TrendKind::constant:
      return "constant";
    case TrendKind::linear:
      return "linear";
  }
  return "none";
}

DenseMatrix make_design(const PointList& points, TrendKind kind) {
  const std::size_t n = points.size();
  switch (kind) {
    case TrendKind::none:
      return DenseMatrix(n, 0);
    case TrendKind::constant: {
      DenseMatrix x(n, 1, 1.0);
      return x;
    }
    case TrendKind::linear: {
      DenseMatrix x(n, 3);
      for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = points[i].x;
        x(i, 2) = points[i].y;
      }
      return x;
    }
  }
  return DenseMatrix(n, 0);
}

TrendFit fit_trend(const PointList& points, const std::vector<double>& values, TrendKind kind) {
  TrendFit fit;
  fit.kind = kind;
  if (kind == TrendKind::none) return fit;
  fit.coef = least_squares(make_design(points, kind), values);
  return fit;
}

std::vector<double> trend_values(const PointList& points, const TrendFit& fit) {
  if (fit.kind == TrendKind::none) return std::vector<double>(points.size(), 0.0);
  return matvec(make_design(points, fit.kind), fit.coef);
}

}  // namespace vgp
