#pragma once

#include <Eigen/Core>

#include <complex>
#include <vector>

namespace dyncomp {

/// Finite planar point set, one point per column.
using PointSet = Eigen::Matrix2Xd;

PointSet to_point_set(const std::vector<std::complex<double>> &points);

/// sup_{a in A} inf_{b in B} |a - b|. Throws std::invalid_argument on empty input.
double directed_hausdorff(const PointSet &a, const PointSet &b);

/// max of the two directed distances.
double hausdorff_distance(const PointSet &a, const PointSet &b);

} // namespace dyncomp
