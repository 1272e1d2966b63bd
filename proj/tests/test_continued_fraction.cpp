#include "doctest.h"

#include "dyncomp/continued_fraction.hpp"

#include <random>

using namespace dyncomp;

namespace {

std::vector<Rational> values(const std::vector<Convergent> &cs)
{
  std::vector<Rational> out;
  for (const auto &c : cs) {
    out.push_back(c.value());
  }
  return out;
}

std::vector<Integer> ints(std::initializer_list<long> xs)
{
  std::vector<Integer> out;
  for (long x : xs) {
    out.emplace_back(x);
  }
  return out;
}

Rational real_to_rational(const Real &x)
{
  mpq_class q;
  mpf_class f(0, 2048);
  mpfr_get_f(f.get_mpf_t(), x.backend().data(), MPFR_RNDN);
  q = f;
  return q;
}

const CFExpansion golden = CFExpansion::parse("1:rep=1");
const CFExpansion silver = CFExpansion::parse("rep=2");
const CFExpansion one_two = CFExpansion::parse("rep=1,2");

} // namespace

TEST_CASE("parsing and serialization")
{
  CHECK(CFExpansion::parse("cf:1,1,1:rep=1").quotients() == ints({1, 1, 1}));
  CHECK(CFExpansion::parse("cf:1,1,1:rep=1").tail() == ints({1}));
  CHECK(CFExpansion::parse(":rep=1,2").tail() == ints({1, 2}));
  CHECK(CFExpansion::parse("1,1,2").is_finite());
  CHECK_THROWS_AS(CFExpansion::parse("1,1,1"), std::invalid_argument);
  CHECK_THROWS_AS(CFExpansion::parse("1,0:rep=1"), std::invalid_argument);
  CHECK_THROWS_AS(CFExpansion::parse("1,x"), std::invalid_argument);

  auto j = CFExpansion::parse("3,7:rep=1,2").to_json();
  CHECK(j.dump() == R"({"quotients":[3,7],"tail":[1,2]})");
  CHECK(CFExpansion::from_json(j) == CFExpansion::parse("3,7:rep=1,2"));
  CHECK(CFExpansion::parse("3,7:rep=1,2").str() == "3,7:rep=1,2");
}

TEST_CASE("quotient access expands the tail")
{
  CFExpansion cf = CFExpansion::parse("5:rep=1,2");
  CHECK(cf.quotient(1) == 5);
  CHECK(cf.quotient(2) == 1);
  CHECK(cf.quotient(3) == 2);
  CHECK(cf.quotient(6) == 1);
  CHECK(cf.shifted(2).tail() == ints({2, 1}));
  CHECK(cf.shifted(2).quotients().empty());
  CHECK_THROWS_AS(CFExpansion::parse("2").quotient(2), std::out_of_range);
}

TEST_CASE("convergents")
{
  CHECK(values(convergents(golden, 4)) ==
        std::vector<Rational>{Rational(1), Rational(1, 2), Rational(2, 3), Rational(3, 5)});
  CHECK(values(convergents(silver, 3)) ==
        std::vector<Rational>{Rational(1, 2), Rational(2, 5), Rational(5, 12)});
  CHECK(values(convergents(CFExpansion::parse("2"), 1)) == std::vector<Rational>{Rational(1, 2)});
  CHECK_THROWS_AS(convergents(CFExpansion::parse("2"), 2), std::out_of_range);
}

TEST_CASE("denominator recurrence and approximation bound")
{
  WorkingPrecision wp(256);
  for (const auto &cf : {golden, silver, one_two, CFExpansion::parse("3,1,4,1,5:rep=9,2,6")}) {
    auto cs = convergents(cf, 30);
    Real theta = cf_value(cf);
    for (std::size_t k = 1; k < cs.size(); ++k) {
      Integer q_prev = k >= 2 ? cs[k - 2].q : Integer(1);
      CHECK(cs[k].q == cf.quotient(k + 1) * cs[k - 1].q + q_prev);
      CHECK(gcd(cs[k].p, cs[k].q) == 1);
      if (k >= 2) {
        CHECK(cs[k].q > cs[k - 1].q);
      }
      Real err = abs(theta - to_real(cs[k - 1].value()));
      CHECK(err < 1 / to_real(Integer(cs[k - 1].q * cs[k].q)));
    }
  }
}

TEST_CASE("cf_expand on rationals")
{
  CHECK(cf_expand(Rational(1, 2)).quotients() == ints({2}));
  CHECK(cf_expand(Rational(3, 5)).quotients() == ints({1, 1, 2}));
  CHECK(cf_expand(Rational(5, 12)).quotients() == ints({2, 2, 2}));
  CHECK_THROWS_AS(cf_expand(Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(cf_expand(Rational(0)), std::invalid_argument);
}

TEST_CASE("round trip: expanding the m-th convergent reproduces the canonical prefix")
{
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> q_dist(1, 9);
  std::uniform_int_distribution<int> len_dist(1, 12);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Integer> prefix;
    int m = len_dist(rng);
    for (int i = 0; i < m; ++i) {
      prefix.emplace_back(q_dist(rng));
    }
    CFExpansion cf(prefix, {Integer(1)});
    Rational value = convergents(cf, prefix.size()).back().value();
    if (value >= 1) {
      continue; // [1] is the integer 1
    }
    std::vector<Integer> canonical = prefix;
    if (canonical.size() >= 2 && canonical.back() == 1) {
      canonical.pop_back();
      canonical.back() += 1;
    }
    CHECK(cf_expand(value).quotients() == canonical);
  }
}

TEST_CASE("cf_expand from a bracket oracle certifies only what the budget allows")
{
  RealOracle oracle = [](int bits) {
    WorkingPrecision wp(bits + 64);
    Real x = cf_value(golden);
    Rational mid = real_to_rational(x);
    Rational half_width = pow2(-bits - 1);
    return std::pair<Rational, Rational>{mid - half_width, mid + half_width};
  };
  auto result = cf_expand(oracle, 64, 20);
  CHECK(result.complete);
  CHECK(result.quotients == std::vector<Integer>(20, Integer(1)));

  auto starved = cf_expand(oracle, 20, 200);
  CHECK_FALSE(starved.complete);
  CHECK_FALSE(starved.reason.empty());
  CHECK(starved.quotients.size() < 20);
  for (const auto &r : starved.quotients) {
    CHECK(r == 1);
  }

  RealOracle exact = [](int) { return std::pair{Rational(5, 12), Rational(5, 12)}; };
  auto finite = cf_expand(exact, 8, 10);
  CHECK(finite.terminated);
  CHECK(finite.complete);
  CHECK(finite.quotients == ints({2, 2, 2}));
}

TEST_CASE("Gauss orbit of periodic expansions")
{
  WorkingPrecision wp(200);
  const Real eps = pow(Real(2), -190);
  Real golden_value = (sqrt(Real(5)) - 1) / 2;
  for (const Real &t : gauss_orbit(golden, 10)) {
    CHECK(abs(t - golden_value) < eps);
  }
  Real silver_value = sqrt(Real(2)) - 1;
  for (const Real &t : gauss_orbit(silver, 10)) {
    CHECK(abs(t - silver_value) < eps);
  }
  auto alt = gauss_orbit(one_two, 6);
  CHECK(abs(alt[1] - (1 / alt[0] - 1)) < eps);
  CHECK(abs(alt[2] - (1 / alt[1] - 2)) < eps);
  CHECK(abs(alt[0] - alt[2]) < eps);
  CHECK(abs(alt[1] - alt[3]) < eps);
  CHECK(abs(alt[0] - alt[1]) > 0.1);
}

TEST_CASE("Brjuno partial sums")
{
  WorkingPrecision wp(128);
  for (const auto *cf : {&golden, &silver}) {
    Real theta = cf_value(*cf);
    Real closed = log(1 / theta) / (1 - theta);
    auto sums = brjuno_partial_sums(*cf, 50);
    CHECK(abs(sums.back() - closed) < 1e-6);
    for (std::size_t i = 1; i < sums.size(); ++i) {
      CHECK(sums[i] >= sums[i - 1]);
    }
    CHECK(abs(sums.front() - log(1 / theta)) < 1e-30);
  }
  CHECK(abs(brjuno_sum(golden, 50) - 1.2598) < 1e-4);

  auto mixed = brjuno_partial_sums(CFExpansion::parse("1,7,1,30:rep=1,2"), 40);
  for (std::size_t i = 1; i < mixed.size(); ++i) {
    CHECK(mixed[i] >= mixed[i - 1]);
  }
}

TEST_CASE("bounded type")
{
  CHECK(is_bounded_type(golden, Integer(1)));
  CHECK_FALSE(is_bounded_type(golden, Integer(0)));
  CHECK_FALSE(is_bounded_type(CFExpansion::parse("1,1,5:rep=1"), Integer(3)));
  CHECK(is_bounded_type(CFExpansion::parse("1,1,5:rep=1"), Integer(5)));
  CHECK_FALSE(is_bounded_type(CFExpansion::parse("1:rep=1,4"), Integer(3)));
}

TEST_CASE("perturbed fractions")
{
  CHECK(perturbed_cf(ints({1, 1}), Rational(2)) == CFExpansion::parse("1,1,4:rep=1"));
  CHECK(perturbed_cf(ints({1, 1, 1}), Rational(2)) == CFExpansion::parse("1,1,1,8:rep=1"));
  CHECK(perturbed_cf(ints({2}), Rational(3)) == CFExpansion::parse("2,9:rep=1"));
  // q_6 = 13 for the golden prefix; 1.5^13 = 194.6...
  CHECK(perturbed_cf(ints({1, 1, 1, 1, 1, 1}), Rational(3, 2)).quotient(7) == 194);
  // Large exponents go through exact integer powers.
  CFExpansion big = perturbed_cf(std::vector<Integer>(12, Integer(1)), Rational(2));
  Integer expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), 2, 233);
  CHECK(big.quotient(13) == expected);
  CHECK_THROWS_AS(perturbed_cf(ints({1}), Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(perturbed_cf({}, Rational(2)), std::invalid_argument);
}
