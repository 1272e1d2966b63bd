#include "dyncomp/lavrentiev.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace dyncomp {

namespace {

using cd = std::complex<double>;

double point_set_diameter(const std::vector<cd> &pts)
{
  double worst = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      worst = std::max(worst, std::norm(pts[i] - pts[j]));
    }
  }
  return std::sqrt(worst);
}

} // namespace

cd model_map(cd u)
{
  if (u == cd(0, 0)) {
    return 0;
  }
  if (u.imag() == 0 && std::abs(u.real()) >= 0.5) {
    throw std::invalid_argument("model_map: point lies on a slit");
  }
  const cd z = 1.0 / u;
  const cd psi = (z + std::sqrt(z - 2.0) * std::sqrt(z + 2.0)) / 2.0;
  return 1.0 / psi;
}

cd model_boundary_map(double x, bool from_above)
{
  if (std::abs(x) < 0.5) {
    throw std::invalid_argument("model_boundary_map: x must lie on a slit");
  }
  // u = x +- i0 gives z = 1/x -+ i0 on [-2, 2].
  const double z = 1 / x;
  const double root = std::sqrt(std::max(0.0, 4 - z * z));
  const cd psi = from_above ? cd(z, -root) / 2.0 : cd(z, root) / 2.0;
  return 1.0 / psi;
}

LavrentievResult lavrentiev_check(const SlitCrosscut &crosscut, double M, double epsilon,
                                  std::size_t samples)
{
  const double lo = std::min(crosscut.a, crosscut.b);
  const double hi = std::max(crosscut.a, crosscut.b);
  if (!(hi > lo) || (lo < 0.5 && hi > -0.5)) {
    throw std::invalid_argument("lavrentiev_check: endpoints must be distinct points of one slit");
  }
  if (samples < 2) {
    throw std::invalid_argument("lavrentiev_check: need at least two samples");
  }
  LavrentievResult out;
  out.crosscut = crosscut;
  out.diameter = hi - lo;
  const double dist = std::min(std::abs(lo), std::abs(hi));
  out.M = M > 0 ? M : dist;
  if (out.M > dist) {
    throw std::invalid_argument("lavrentiev_check: M exceeds the distance to the base point");
  }
  out.epsilon = epsilon;
  if (!(epsilon > 0)) {
    // Smallest double with epsilon^2 >= diam.
    out.epsilon = std::sqrt(out.diameter);
    while (out.epsilon * out.epsilon < out.diameter) {
      out.epsilon = std::nextafter(out.epsilon, HUGE_VAL);
    }
  }
  if (out.epsilon * out.epsilon < out.diameter) {
    throw std::invalid_argument("lavrentiev_check: diam(gamma) exceeds epsilon^2");
  }
  if (!(out.epsilon * out.epsilon < out.M / 4)) {
    throw std::invalid_argument("lavrentiev_check: precondition epsilon^2 < M/4 violated");
  }
  out.bound = 30 * out.epsilon / std::sqrt(out.M);

  // Boundary of N_gamma: the semicircle and the slit segment beneath it.
  const double mid = (lo + hi) / 2;
  const double radius = (hi - lo) / 2;
  const double side = crosscut.upper ? 1 : -1;
  std::vector<cd> image;
  image.reserve(2 * samples + 2);
  for (std::size_t k = 0; k <= samples; ++k) {
    const double x = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(samples);
    image.push_back(model_boundary_map(x, crosscut.upper));
  }
  for (std::size_t k = 1; k < samples; ++k) {
    const double t = M_PI * static_cast<double>(k) / static_cast<double>(samples);
    image.push_back(model_map(cd(mid - radius * std::cos(t), side * radius * std::sin(t))));
  }
  out.image_diameter = point_set_diameter(image);
  out.margin = out.bound - out.image_diameter;
  out.holds = out.image_diameter <= out.bound;
  return out;
}

LavrentievMonteCarlo lavrentiev_monte_carlo(std::size_t trials, std::uint64_t seed,
                                            std::size_t samples)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1);
  LavrentievMonteCarlo out;
  for (std::size_t i = 0; i < trials; ++i) {
    const bool right = unit(rng) < 0.5;
    const bool upper = unit(rng) < 0.5;
    const double m = 0.5 + 3.5 * unit(rng);
    const double d = (m / 4) * std::pow(10.0, -6 * unit(rng)) * (1 - 1e-12);
    SlitCrosscut cut = right ? SlitCrosscut{m, m + d, upper} : SlitCrosscut{-m - d, -m, upper};
    auto r = lavrentiev_check(cut, 0, 0, samples);
    if (!r.holds) {
      ++out.violations;
    }
    out.worst_margin = i == 0 ? r.margin : std::min(out.worst_margin, r.margin);
    out.results.push_back(r);
  }
  return out;
}

} // namespace dyncomp
