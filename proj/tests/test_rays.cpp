#include "doctest.h"

#include "dyncomp/cardioid.hpp"
#include "dyncomp/julia.hpp"
#include "dyncomp/rays.hpp"

#include <random>

using namespace dyncomp;
using cd = std::complex<double>;

namespace {

void check_potentials_decrease(const RayTrace<double> &ray, double t_min)
{
  REQUIRE(ray.points.size() == ray.potentials.size());
  for (std::size_t i = 1; i < ray.potentials.size(); ++i) {
    CHECK(ray.potentials[i] < ray.potentials[i - 1]);
  }
  CHECK(ray.potentials.back() <= t_min);
  CHECK(ray.potentials.back() > 0);
}

} // namespace

TEST_CASE("c = 0 rays are radial")
{
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(0, 1000);
  std::vector<Angle> angles{Angle(0, 1), Angle(1, 3), Angle(1, 7), Angle(5, 12)};
  for (int i = 0; i < 6; ++i) {
    angles.emplace_back(Integer(num(rng)), Integer(1001));
  }
  for (const Angle &a : angles) {
    auto ray = trace_ray(cd(0, 0), a, 1e-6);
    check_potentials_decrease(ray, 1e-6);
    for (std::size_t i = 0; i < ray.points.size(); ++i) {
      cd expected = std::polar(std::exp(ray.potentials[i]), 2 * M_PI * a.to_double());
      CHECK(std::abs(ray.points[i] - expected) <= 1e-9 * std::abs(expected));
    }
    CHECK(std::abs(ray.points.back() - std::polar(1.0, 2 * M_PI * a.to_double())) < 1e-5);
  }
}

TEST_CASE("c = -2 rays land at the segment ends")
{
  // phi(w) = w + 1/w: the ray at angle 0 is 2 cosh(t), at 1/2 it is -2 cosh(t).
  auto right = trace_ray(cd(-2, 0), Angle(0, 1), 1e-6);
  auto left = trace_ray(cd(-2, 0), Angle(1, 2), 1e-6);
  check_potentials_decrease(right, 1e-6);
  check_potentials_decrease(left, 1e-6);
  CHECK(std::abs(right.points.back() - cd(2, 0)) < 1e-3);
  CHECK(std::abs(left.points.back() - cd(-2, 0)) < 1e-3);
  for (std::size_t i = 1; i < right.points.size(); ++i) {
    double t = right.potentials[i];
    CHECK(std::abs(right.points[i] - cd(2 * std::cosh(t), 0)) <= 1e-9 * 2 * std::cosh(t));
  }
  // Consecutive spacing shrinks toward the landing point.
  auto gap = [](const RayTrace<double> &r, std::size_t i) {
    return std::abs(r.points[i] - r.points[i - 1]);
  };
  CHECK(gap(right, right.points.size() - 1) < 1e-6);
  CHECK(gap(left, left.points.size() - 1) < 1e-6);
}

TEST_CASE("dynamical lift: f maps R_alpha at t onto R_{2 alpha} at 2t")
{
  const cd c(-0.12, 0.74);
  const Angle alpha(1, 7);
  auto ray = trace_ray(c, alpha, 1e-3);
  auto image = trace_ray(c, doubled(alpha), 2e-3);
  check_potentials_decrease(ray, 1e-3);
  std::size_t matched = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < ray.points.size(); ++i) {
    const double t2 = 2 * ray.potentials[i];
    while (j < image.potentials.size() && image.potentials[j] > t2 * (1 + 1e-12)) {
      ++j;
    }
    if (j == image.potentials.size()) {
      break;
    }
    if (std::abs(image.potentials[j] - t2) > 1e-12 * t2) {
      continue;
    }
    cd z = ray.points[i];
    CHECK(std::abs(z * z + c - image.points[j]) < 1e-8 * (1 + std::abs(image.points[j])));
    ++matched;
  }
  CHECK(matched > 50);
}

TEST_CASE("extended precision trace agrees with doubles")
{
  WorkingPrecision wp(128);
  RayOptions options;
  options.tolerance = 1e-30;
  auto fine = trace_ray(Complex(Real(-2)), Angle(1, 2), 1e-6, options);
  CHECK(abs(fine.points.back() - Complex(Real(-2) * cosh(fine.potentials.back()))) < 1e-25);
}

TEST_CASE("invalid ray parameters")
{
  CHECK_THROWS_AS(trace_ray(cd(0, 0), Angle(0, 1), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(trace_ray(cd(0, 0), Angle(0, 1), 100.0), std::invalid_argument);
  CHECK_THROWS_AS(pull_back_cycle(cd(0, 0), {Angle(1, 7), Angle(2, 7)}, 1e-3, 1),
                  std::invalid_argument);
}

TEST_CASE("rays of the rotation-1/3 cycle land together at the parabolic fixed point")
{
  WorkingPrecision wp(128);
  Complex cc = c_of_theta(Rational(1, 3));
  const cd c(cc.real().convert_to<double>(), cc.imag().convert_to<double>());
  Real t = 2 * pi() / 3;
  const cd fixed(cos(t).convert_to<double>() / 2, sin(t).convert_to<double>() / 2);

  auto orbit = find_orbit(1, 3);
  REQUIRE(orbit.angles == std::vector<Angle>{Angle(1, 7), Angle(2, 7), Angle(4, 7)});
  auto landing = pull_back_cycle(c, orbit.angles, 1e-3, 4'000'000);
  CHECK(landing.spread() < 1e-2);
  for (const cd &z : landing.endpoints) {
    CHECK(std::abs(z - fixed) < 1e-2);
  }
  // The endpoints still approach the fixed point slowly, as expected at a
  // parabolic point.
  auto early = pull_back_cycle(c, orbit.angles, 1e-3, 1000);
  CHECK(early.spread() > landing.spread());
}

TEST_CASE("parallel tracing matches sequential tracing")
{
  const cd c(-0.12, 0.74);
  std::vector<Angle> angles{Angle(1, 7), Angle(2, 7), Angle(4, 7), Angle(1, 3)};
  auto batch = trace_rays(c, angles, 1e-3);
  REQUIRE(batch.size() == angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    auto single = trace_ray(c, angles[i], 1e-3);
    CHECK(batch[i].angle == angles[i]);
    CHECK(batch[i].points == single.points);
  }
  CHECK_THROWS_AS(trace_rays(c, angles, -1.0), std::invalid_argument);
}
