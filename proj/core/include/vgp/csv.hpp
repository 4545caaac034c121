#pragma once

#include <string>
#include <vector>

#include "vgp/dataset.hpp"
#include "vgp/point_set.hpp"
#include "vgp/predict.hpp"
#include "vgp/variogram.hpp"

namespace vgp {

// Readers check the header row and reject malformed or non-finite fields
// with the 1-based data row number in the message.  Writers print every
// number with enough digits to round-trip exactly.

// header "x,y,value"; at least one data row
Dataset read_dataset_csv(const std::string& path);

// header "x,y"; an empty body is allowed
PointList read_points_csv(const std::string& path);

void write_dataset_csv(const std::string& path, const Dataset& data);
void write_points_csv(const std::string& path, const PointList& points);

// columns x,y,mean,sd,lower,upper,flag
void write_predictions_csv(const std::string& path, const PredictionSet& pred);

// columns bin_center,semivariance,count
void write_variogram_csv(const std::string& path, const VariogramEstimate& vg);

}  // namespace vgp
