#include "doctest.h"

#include "dyncomp/siegel.hpp"

using namespace dyncomp;

namespace {

const CFExpansion golden = CFExpansion::parse("1:rep=1");
const CFExpansion silver = CFExpansion::parse("rep=2");
const CFExpansion one_two = CFExpansion::parse("rep=1,2");

double d(const Real &x) { return x.convert_to<double>(); }

} // namespace

TEST_CASE("low-order coefficients")
{
  auto s = linearization_coeffs(golden, 40, 256);
  WorkingPrecision wp(256);
  const Real eps = pow(Real(2), -240);
  const Complex lambda = s.lambda;
  CHECK(s.b(1) == Complex(Real(1)));
  Complex l2 = lambda * lambda - lambda;
  Complex l3 = lambda * lambda * lambda - lambda;
  CHECK(abs(s.b(2) - Real(1) / l2) < eps);
  // Degree 3: b_3 (lambda^3 - lambda) = 2 b_1 b_2.
  CHECK(abs(s.b(3) - Real(2) / (l2 * l3)) < eps);
  CHECK(abs(abs(lambda) - 1) < eps);
  // Residuals are relative to the size of the coefficient.
  auto residuals = recursion_residuals(s);
  for (std::size_t n = 2; n <= s.order(); ++n) {
    CHECK(residuals[n - 2] < eps * (1 + abs(s.b(n))));
  }
}

TEST_CASE("double and multiprecision series agree")
{
  auto exact = linearization_coeffs(golden, 60, 256);
  const double theta = (std::sqrt(5.0) - 1) / 2;
  const double t = 2 * M_PI * theta;
  auto fast = linearization_series(std::complex<double>(std::cos(t), std::sin(t)), 60, 53);
  for (std::size_t n = 1; n <= 60; ++n) {
    double re = d(exact.b(n).real());
    double im = d(exact.b(n).imag());
    CHECK(std::abs(fast.b(n) - std::complex<double>(re, im)) <= 1e-9 * (1 + std::abs(fast.b(n))));
  }
}

TEST_CASE("functional equation on half the estimated radius")
{
  auto s = linearization_coeffs(golden, 200, 256);
  WorkingPrecision wp(256);
  auto est = conformal_radius_estimate(s);
  const Real radius = est.r_hat / 2;
  Real worst = 0;
  for (int k = 0; k < 64; ++k) {
    Real t = 2 * pi() * k / 64;
    Complex w(radius * cos(t), radius * sin(t));
    Complex phi = evaluate(s, w);
    Complex lhs = evaluate(s, Complex(s.lambda * w));
    Real r = abs(lhs - s.lambda * phi - phi * phi);
    worst = r > worst ? r : worst;
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("radius estimates")
{
  auto r128 = conformal_radius_estimate(golden, 128, 256);
  auto r256 = conformal_radius_estimate(golden, 256, 256);
  CHECK(r128.reliable);
  CHECK(r256.reliable);
  CHECK(abs(r128.r_hat / r256.r_hat - 1) < 0.05);
  CHECK(r256.r_hat_half_order == r128.r_hat);

  auto s = linearization_coeffs(golden, 256, 256);
  WorkingPrecision wp(256);
  const Real base = conformal_radius_estimate(s).r_hat;
  // Root-test homogeneity up to the c^{1/n} factor of the estimator.
  for (double c : {0.5, 3.0}) {
    Real scaled = conformal_radius_estimate(rescaled(s, Real(c))).r_hat;
    Real ratio = scaled / (base * c);
    Real slack = pow(Real(c > 1 ? c : 1 / c), Real(2) / 256);
    CHECK(ratio <= slack);
    CHECK(ratio >= 1 / slack);
  }
  CHECK_THROWS_AS(conformal_radius_estimate(golden, 16, 128), std::invalid_argument);
  CHECK_THROWS_AS(linearization_coeffs(CFExpansion::parse("2"), 64, 128), std::invalid_argument);
}

TEST_CASE("resonant multiplier is rejected")
{
  CHECK_THROWS_AS(linearization_series(std::complex<double>(1.0, 0.0), 10, 53), PrecisionExhausted);
  CHECK_THROWS_AS(linearization_series(std::complex<double>(-1.0, 0.0), 10, 53),
                  PrecisionExhausted);
}

TEST_CASE("Koebe sandwich for bounded-type angles")
{
  for (const auto *cf : {&golden, &silver, &one_two}) {
    auto s = linearization_coeffs(*cf, 512, 256);
    WorkingPrecision wp(256);
    auto est = conformal_radius_estimate(s);
    auto probe = inner_radius_probe(s, est.r_hat, 512);
    CHECK(probe.tail_ok);
    CHECK(probe.rho_hat >= 0.99 * est.r_hat / 4);
    CHECK(probe.rho_hat <= 1.01 * est.r_hat);
    CHECK(probe.circle_radius == est.r_hat * Real(0.98));
    if (cf == &golden) {
      auto denser = inner_radius_probe(s, est.r_hat, 1024);
      CHECK(abs(denser.rho_hat / probe.rho_hat - 1) < 0.01);
      CHECK(denser.rho_hat <= probe.rho_hat);
    }
  }
}

TEST_CASE("distortion bound F")
{
  CHECK(koebe_bound_F(Rational(1)) == 1);
  CHECK(koebe_bound_F(Rational(0)) == 0);
  CHECK(koebe_bound_F(Rational(1, 2)) == Rational(8, 9));
  Rational prev = -1;
  for (int k = 0; k <= 64; ++k) {
    Rational x(k, 64);
    Rational f = koebe_bound_F(x);
    CHECK(f > prev);
    CHECK(f <= 1);
    // V = B(0, x) inside U = B(0, 1): r(V) = x, r(U) = 1, rho(V) = x, rho(U) = 1.
    CHECK(x <= 1 * koebe_bound_F(x / 1));
    prev = f;
  }
  CHECK_THROWS_AS(koebe_bound_F(Rational(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(koebe_bound_F(Rational(-1, 2)), std::invalid_argument);
}

TEST_CASE("radius ratio under perturbation")
{
  auto ex = radius_ratio_experiment({Integer(1)}, Rational(2), 3, 6, 256, 256);
  REQUIRE(ex.rows.size() == 4);
  CHECK(ex.reliable);
  CHECK(ex.trend);
  WorkingPrecision wp(256);
  for (const auto &row : ex.rows) {
    CHECK(row.r_hat_perturbed < row.r_hat_theta);
    CHECK(row.scaled == row.r_hat_perturbed * 2);
  }
  CHECK(ex.rows[0].perturbed == CFExpansion::parse("1,1,1,8:rep=1"));
  CHECK_THROWS_AS(radius_ratio_experiment({Integer(1)}, Rational(1), 3, 6, 256, 256),
                  std::invalid_argument);
}
