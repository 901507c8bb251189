#pragma once

#include <Eigen/Dense>

namespace boxoffice {

/// One observation per row.
using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Labels = Eigen::VectorXi;

}  // namespace boxoffice
