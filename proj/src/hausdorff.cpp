#include "dyncomp/hausdorff.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace dyncomp {

PointSet to_point_set(const std::vector<std::complex<double>> &points)
{
  PointSet out(2, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    out(0, static_cast<Eigen::Index>(i)) = points[i].real();
    out(1, static_cast<Eigen::Index>(i)) = points[i].imag();
  }
  return out;
}

double directed_hausdorff(const PointSet &a, const PointSet &b)
{
  if (a.cols() == 0 || b.cols() == 0) {
    throw std::invalid_argument("hausdorff: point sets must be nonempty");
  }
  double worst = 0;
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    const Eigen::Vector2d p = a.col(i);
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      best = std::min(best, (b.col(j) - p).squaredNorm());
      if (best <= worst) {
        break; // p cannot raise the supremum
      }
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

double hausdorff_distance(const PointSet &a, const PointSet &b)
{
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

} // namespace dyncomp
