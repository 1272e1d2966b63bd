#include "doctest.h"

#include "dyncomp/angle.hpp"

#include <random>
#include <map>

using namespace dyncomp;

namespace {

Angle A(const char *s) { return Angle::parse(s); }

Angle random_angle(std::mt19937_64 &rng, unsigned long max_den)
{
  std::uniform_int_distribution<unsigned long> den_dist(1, max_den);
  unsigned long den = den_dist(rng);
  std::uniform_int_distribution<unsigned long> num_dist(0, den - 1);
  return Angle(Integer(num_dist(rng)), Integer(den));
}

} // namespace

TEST_CASE("angles are stored reduced and normalized")
{
  Angle a(Integer(6), Integer(8));
  CHECK(a.numerator() == 3);
  CHECK(a.denominator() == 4);
  CHECK(Angle(Integer(7), Integer(3)).str() == "1/3");
  CHECK(Angle(Integer(-1), Integer(3)).str() == "2/3");
  CHECK(Angle().str() == "0/1");
  CHECK(A("0.125").str() == "1/8");
  CHECK(A("1.75").str() == "3/4");
  CHECK(A("22/31").str() == "22/31");
  CHECK_THROWS_AS(A("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(A("abc"), std::invalid_argument);
}

TEST_CASE("doubling")
{
  CHECK(doubled(A("1/3")) == A("2/3"));
  CHECK(doubled(A("2/3")) == A("1/3"));
  CHECK(doubled(A("6/7")) == A("5/7"));
  CHECK(doubled(A("21/31"), 5) == A("21/31"));
  CHECK(doubled(A("1/12"), 3) == A("2/3"));
}

TEST_CASE("circle distance")
{
  CHECK(circle_distance(A("1/7"), A("4/7")) == Rational(3, 7));
  CHECK(circle_distance(A("0"), A("3/4")) == Rational(1, 4));
  CHECK(circle_distance(A("1/3"), A("1/3")) == 0);
}

TEST_CASE("circle distance is a metric on random rationals")
{
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 2000; ++trial) {
    Angle a = random_angle(rng, 97), b = random_angle(rng, 97), c = random_angle(rng, 97);
    CHECK(circle_distance(a, b) == circle_distance(b, a));
    CHECK(circle_distance(a, c) <= circle_distance(a, b) + circle_distance(b, c));
    CHECK((circle_distance(a, b) == 0) == (a == b));
    CHECK(circle_distance(a, b) <= Rational(1, 2));
  }
}

TEST_CASE("halve_preimages")
{
  auto [a0, a1] = halve_preimages(A("0"));
  CHECK(a0 == A("0"));
  CHECK(a1 == A("1/2"));
  auto [b0, b1] = halve_preimages(A("2/3"));
  CHECK(b0 == A("1/3"));
  CHECK(b1 == A("5/6"));
  auto [c0, c1] = halve_preimages(A("1/7"));
  CHECK(c0 == A("1/14"));
  CHECK(c1 == A("4/7"));

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    Angle a = random_angle(rng, 1000);
    auto [u, v] = halve_preimages(a);
    CHECK(doubled(u) == a);
    CHECK(doubled(v) == a);
    CHECK(u != v);
  }
}

TEST_CASE("cyclic_sort")
{
  auto sorted = cyclic_sort({A("2/7"), A("4/7"), A("1/7")});
  CHECK(sorted == std::vector<Angle>{A("1/7"), A("2/7"), A("4/7")});
  CHECK(cyclic_sort({A("2/3"), A("1/3")}) == std::vector<Angle>{A("1/3"), A("2/3")});
  CHECK(cyclic_sort({A("0")}) == std::vector<Angle>{A("0")});
  CHECK_THROWS_AS(cyclic_sort({A("1/3"), A("4/3")}), std::invalid_argument);
}

TEST_CASE("doubling is exactly 2-to-1 on odd-denominator angles")
{
  // Among the angles j/(2d), every k/d is the image of exactly two.
  for (unsigned long d = 1; d <= 1023; d += 2) {
    std::map<Rational, int> hits;
    for (unsigned long j = 0; j < 2 * d; ++j) {
      Angle a(Integer(j), Integer(2 * d));
      hits[doubled(a).value()] += 1;
    }
    for (const auto &[value, count] : hits) {
      CHECK(count == 2);
    }
    CHECK(hits.size() == d);
  }
}

TEST_CASE("q-periodic angles are exactly those with denominator dividing 2^q - 1")
{
  for (unsigned long q = 1; q <= 12; ++q) {
    const unsigned long m = (1UL << q) - 1;
    for (unsigned long den = 1; den <= 4095; ++den) {
      Angle a(Integer(1), Integer(den));
      bool periodic = doubled(a, q) == a;
      CHECK(periodic == (m % den == 0));
    }
  }
}

TEST_CASE("doubling_period")
{
  CHECK(doubling_period(A("1/7")) == 3);
  CHECK(doubling_period(A("21/31")) == 5);
  CHECK(doubling_period(A("0")) == 1);
  CHECK(doubling_period(A("1/6")) == 0);
}
