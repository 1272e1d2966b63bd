#include "doctest.h"

#include "dyncomp/lavrentiev.hpp"

#include <chrono>
#include <cmath>
#include <random>

using namespace dyncomp;
using cd = std::complex<double>;

TEST_CASE("model map inverts v -> v / (1 + v^2)")
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 500; ++i) {
    cd v(u(rng), u(rng));
    if (std::abs(v) >= 0.999) {
      continue;
    }
    cd w = v / (1.0 + v * v);
    CHECK(std::abs(model_map(w) - v) < 1e-10);
  }
  CHECK(model_map(cd(0, 0)) == cd(0, 0));
  CHECK_THROWS_AS(model_map(cd(0.7, 0)), std::invalid_argument);
}

TEST_CASE("boundary values are limits from each side")
{
  for (double x : {0.5, 0.6, 1.0, 3.0, -0.8, -2.5}) {
    for (bool above : {true, false}) {
      cd limit = model_boundary_map(x, above);
      CHECK(std::abs(std::abs(limit) - 1) < 1e-12);
      cd inside = model_map(cd(x, above ? 1e-10 : -1e-10));
      CHECK(std::abs(inside - limit) < 1e-4);
    }
  }
  CHECK_THROWS_AS(model_boundary_map(0.3, true), std::invalid_argument);
}

TEST_CASE("small crosscut at distance 1")
{
  // Endpoints 1 and 1 + 1e-4: M = 1, diam = 1e-4, epsilon = 1e-2.
  auto r = lavrentiev_check({1.0, 1.0 + 1e-4, true});
  CHECK(r.M == 1.0);
  CHECK(r.epsilon == doctest::Approx(1e-2).epsilon(1e-9));
  CHECK(r.bound == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(r.holds);
  CHECK(r.image_diameter <= 0.3);
  CHECK(r.margin > 0);

  auto smaller = lavrentiev_check({1.0, 1.0 + 1e-6, true});
  CHECK(smaller.bound == doctest::Approx(r.bound / 10).epsilon(1e-9));
  CHECK(smaller.holds);
  CHECK(smaller.image_diameter < r.image_diameter);
}

TEST_CASE("crosscut validation")
{
  CHECK_THROWS_AS(lavrentiev_check({1.0, 1.0, true}), std::invalid_argument);
  CHECK_THROWS_AS(lavrentiev_check({-1.0, 1.0, true}), std::invalid_argument);
  CHECK_THROWS_AS(lavrentiev_check({0.2, 0.3, true}), std::invalid_argument);
  // epsilon^2 = 0.3 is not below M/4 = 0.25.
  CHECK_THROWS_AS(lavrentiev_check({1.0, 1.3, true}), std::invalid_argument);
  CHECK_THROWS_AS(lavrentiev_check({1.0, 1.01, true}, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(lavrentiev_check({1.0, 1.01, true}, 0, 0.05), std::invalid_argument);
  CHECK_NOTHROW(lavrentiev_check({-1.01, -1.0, false}, 0.9, 0.2));
}

TEST_CASE("image diameter is symmetric under conjugation and reflection")
{
  auto a = lavrentiev_check({0.8, 0.85, true});
  auto b = lavrentiev_check({0.8, 0.85, false});
  auto c = lavrentiev_check({-0.85, -0.8, true});
  CHECK(a.image_diameter == doctest::Approx(b.image_diameter).epsilon(1e-12));
  CHECK(a.image_diameter == doctest::Approx(c.image_diameter).epsilon(1e-12));
}

TEST_CASE("Monte Carlo over random admissible crosscuts")
{
  auto start = std::chrono::steady_clock::now();
  auto mc = lavrentiev_monte_carlo(100, 20240601);
  CHECK(mc.results.size() == 100);
  CHECK(mc.violations == 0);
  CHECK(mc.worst_margin > 0);
  for (const auto &r : mc.results) {
    CHECK(r.epsilon * r.epsilon < r.M / 4);
  }
  auto again = lavrentiev_monte_carlo(100, 20240601);
  CHECK(again.worst_margin == mc.worst_margin);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(60));
}
