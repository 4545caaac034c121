#pragma once

#include <string>
#include <vector>

#include "vgp/dense.hpp"
#include "vgp/point_set.hpp"

namespace vgp {

// Observed spatial data: one scalar response per site.
struct Dataset {
  PointList points;
  std::vector<double> values;

  std::size_t size() const { return points.size(); }
};

enum class TrendKind { none, constant, linear };

TrendKind trend_kind_from_string(const std::string& name);
std::string to_string(TrendKind kind);

// Design matrix of the trend surface: no columns for `none`, an intercept
// for `constant`, intercept plus both coordinates for `linear`.
DenseMatrix make_design(const PointList& points, TrendKind kind);

// Ordinary least squares fit of the trend surface.
struct TrendFit {
  TrendKind kind = TrendKind::none;
  std::vector<double> coef;
};

TrendFit fit_trend(const PointList& points, const std::vector<double>& values, TrendKind kind);
std::vector<double> trend_values(const PointList& points, const TrendFit& fit);

}  // namespace vgp
