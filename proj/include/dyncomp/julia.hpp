#pragma once

#include "dyncomp/continued_fraction.hpp"
#include "dyncomp/numeric.hpp"

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dyncomp {

struct IterateResult {
  bool escaped = false;
  /// First k with |f^k(z)| > escape_radius; iteration count when bounded.
  int steps = 0;
};

/// Orbit of z under f_c(z) = z^2 + c. Requires escape_radius >= 2 + |c| so
/// that escape is final.
template <class Scalar>
IterateResult iterate(const std::complex<Scalar> &c, std::complex<Scalar> z, int max_iter,
                      const Scalar &escape_radius)
{
  using std::abs;
  if (escape_radius < Scalar(2) + abs(c)) {
    throw std::invalid_argument("iterate: escape radius must be at least 2 + |c|");
  }
  const Scalar r2 = escape_radius * escape_radius;
  for (int k = 0; k <= max_iter; ++k) {
    if (std::norm(z) > r2) {
      return {true, k};
    }
    if (k < max_iter) {
      z = z * z + c;
    }
  }
  return {false, max_iter};
}

/// c(theta) = lambda/2 - lambda^2/4 with lambda = exp(2 pi i theta): the
/// parameter whose fixed point lambda/2 has multiplier lambda.
Complex c_of_theta(const CFExpansion &cf);
Complex c_of_theta(const Rational &theta);

/// Radius beyond which every orbit of f_c escapes: 1/2 + sqrt(1/4 + |c|).
double escape_bound(std::complex<double> c);

enum class CellClass : std::uint8_t { far = 0, borderline = 1, near = 2 };

/// Dyadic pixel classification of J_c: cells of side 2^-n over the square
/// [-h, h]^2, stored row-major from the bottom row up.
struct PixelGrid {
  int resolution_exponent = 0;
  /// Half-width h of the square extent, a multiple of 1/4.
  Rational half_width;
  std::size_t side = 0;
  std::vector<CellClass> cells;
  std::complex<double> c;
  double safety_factor = 4;
  int max_iter = 0;

  double cell_side() const;
  CellClass at(std::size_t col, std::size_t row) const { return cells[row * side + col]; }
  std::complex<double> center(std::size_t col, std::size_t row) const;
  std::vector<std::complex<double>> centers(CellClass which) const;
  std::size_t count(CellClass which) const;
};

struct RenderOptions {
  int max_iter = 2000;
  double safety_factor = 4;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

inline constexpr int kMaxResolutionExponent = 14;

/// Classifies each cell from its four corners and center:
/// - near: samples disagree about escaping; or the center escapes with
///   safety * E <= 2^-n, E = |z_k| log|z_k| / |dz_k| the exterior distance
///   estimate; or every sample stays bounded and an escaping sample lies
///   within one cell side of the center;
/// - far: the center escapes with E >= 2 safety 2^-n, or every sample of the
///   5x5 block around the cell stays bounded;
/// - borderline otherwise.
PixelGrid render_julia(std::complex<double> c, int n, const RenderOptions &options = {});

} // namespace dyncomp
