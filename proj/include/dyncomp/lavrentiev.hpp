#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace dyncomp {

/// The model domain is the image of the exterior of [-2, 2] under z -> 1/z:
/// the plane minus the slits (-inf, -1/2] and [1/2, inf), base point 0. Its
/// Riemann map to the disk, sending 0 to 0, is u -> 1/psi(1/u) with
/// psi(z) = (z + sqrt(z - 2) sqrt(z + 2)) / 2 inverse to w -> w + 1/w.
std::complex<double> model_map(std::complex<double> u);

/// Boundary value of model_map at x on a slit (|x| >= 1/2), approached from
/// the upper or the lower half-plane.
std::complex<double> model_boundary_map(double x, bool from_above);

/// Semicircular crosscut over [a, b] on one slit, in the upper or lower
/// half-plane. Its crosscut neighborhood is the half-disk it bounds with the
/// slit.
struct SlitCrosscut {
  double a = 0;
  double b = 0;
  bool upper = true;
};

struct LavrentievResult {
  SlitCrosscut crosscut;
  double diameter = 0;
  double epsilon = 0;
  double M = 0;
  double image_diameter = 0;
  /// 30 epsilon / sqrt(M).
  double bound = 0;
  /// bound - image_diameter.
  double margin = 0;
  bool holds = false;
};

/// Evaluates diam(phi(N_gamma)) from `samples` points on each of the two
/// boundary pieces of N_gamma. M defaults to dist(gamma, 0) and epsilon to
/// sqrt(diam(gamma)); explicit values must respect M <= dist(gamma, 0) and
/// diam(gamma) <= epsilon^2. Throws std::invalid_argument for a malformed
/// crosscut or when epsilon^2 < M/4 fails.
LavrentievResult lavrentiev_check(const SlitCrosscut &crosscut, double M = 0, double epsilon = 0,
                                  std::size_t samples = 512);

struct LavrentievMonteCarlo {
  std::vector<LavrentievResult> results;
  std::size_t violations = 0;
  double worst_margin = 0;
};

/// Random admissible crosscuts: slit, side and M = min(|a|, |b|) in [1/2, 4]
/// uniform, diameter log-uniform in [1e-6 M/4, M/4).
LavrentievMonteCarlo lavrentiev_monte_carlo(std::size_t trials, std::uint64_t seed,
                                            std::size_t samples = 512);

} // namespace dyncomp
