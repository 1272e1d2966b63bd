#pragma once

#include "dyncomp/continued_fraction.hpp"
#include "dyncomp/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyncomp {

/// Taylor coefficients of the linearizing map phi(w) = sum_{n>=1} b_n w^n of
/// P(z) = lambda z + z^2, i.e. phi(lambda w) = P(phi(w)), with b_1 = 1.
template <class Scalar>
struct LinearizationSeries {
  using complex_type = std::complex<Scalar>;

  complex_type lambda;
  /// coeffs[k] = b_{k+1}.
  std::vector<complex_type> coeffs;
  int precision_bits = 53;

  std::size_t order() const { return coeffs.size(); }
  const complex_type &b(std::size_t n) const { return coeffs.at(n - 1); }
};

/// Sum_{i+j=n, i,j>=1} b_i b_j from coeffs[0..n-2].
template <class Scalar>
std::complex<Scalar> quadratic_term(const std::vector<std::complex<Scalar>> &coeffs, std::size_t n)
{
  std::complex<Scalar> acc(0);
  for (std::size_t i = 1, j = n - 1; i < j; ++i, --j) {
    acc += coeffs[i - 1] * coeffs[j - 1];
  }
  acc += acc;
  if (n % 2 == 0) {
    const auto &m = coeffs[n / 2 - 1];
    acc += m * m;
  }
  return acc;
}

/// b_n (lambda^n - lambda) = sum_{i+j=n} b_i b_j for n = 2..order. Throws
/// PrecisionExhausted when a small divisor drops below 2^-(bits - 16).
template <class Scalar>
LinearizationSeries<Scalar> linearization_series(const std::complex<Scalar> &lambda,
                                                 std::size_t order, int bits)
{
  using std::abs;
  using std::ldexp;
  if (order < 1) {
    throw std::invalid_argument("linearization_series: order must be positive");
  }
  LinearizationSeries<Scalar> s;
  s.lambda = lambda;
  s.precision_bits = bits;
  s.coeffs.reserve(order);
  s.coeffs.emplace_back(Scalar(1));
  const Scalar floor_divisor = ldexp(Scalar(1), -(bits - 16));
  std::complex<Scalar> power = lambda;
  for (std::size_t n = 2; n <= order; ++n) {
    power *= lambda;
    std::complex<Scalar> divisor = power - lambda;
    if (abs(divisor) < floor_divisor) {
      throw PrecisionExhausted("linearization_series: |lambda^" + std::to_string(n) +
                               " - lambda| below working precision");
    }
    s.coeffs.push_back(quadratic_term(s.coeffs, n) / divisor);
  }
  return s;
}

/// Horner evaluation of the truncated series.
template <class Scalar>
std::complex<Scalar> evaluate(const LinearizationSeries<Scalar> &s, const std::complex<Scalar> &w)
{
  std::complex<Scalar> acc(0);
  for (auto it = s.coeffs.rbegin(); it != s.coeffs.rend(); ++it) {
    acc = acc * w + *it;
  }
  return acc * w;
}

/// |b_n (lambda^n - lambda) - sum b_i b_j| for n = 2..order.
template <class Scalar>
std::vector<Scalar> recursion_residuals(const LinearizationSeries<Scalar> &s)
{
  using std::abs;
  std::vector<Scalar> out;
  std::complex<Scalar> power = s.lambda;
  for (std::size_t n = 2; n <= s.order(); ++n) {
    power *= s.lambda;
    out.push_back(abs(s.b(n) * (power - s.lambda) - quadratic_term(s.coeffs, n)));
  }
  return out;
}

/// Series of c phi(w / c), which has coefficients b_n c^{1-n}.
template <class Scalar>
LinearizationSeries<Scalar> rescaled(const LinearizationSeries<Scalar> &s, const Scalar &c)
{
  LinearizationSeries<Scalar> out = s;
  Scalar factor(1);
  for (auto &b : out.coeffs) {
    b *= factor;
    factor /= c;
  }
  return out;
}

template <class Scalar>
struct RadiusEstimate {
  Scalar r_hat;
  /// The same estimator run on the first half of the coefficients.
  Scalar r_hat_half_order;
  bool reliable = true;
  std::string note;
};

/// Smallest order accepted by conformal_radius_estimate.
inline constexpr std::size_t kMinRadiusOrder = 32;

/// 1 / max_{n in [lo, hi]} |b_n|^{1/n}.
template <class Scalar>
Scalar root_test(const LinearizationSeries<Scalar> &s, std::size_t lo, std::size_t hi)
{
  using std::abs;
  using std::exp;
  using std::log;
  Scalar worst_log(0);
  bool any = false;
  for (std::size_t n = std::max<std::size_t>(lo, 2); n <= hi; ++n) {
    Scalar m = abs(s.b(n));
    if (m == 0) {
      continue;
    }
    Scalar v = log(m) / Scalar(static_cast<double>(n));
    if (!any || v > worst_log) {
      worst_log = v;
      any = true;
    }
  }
  if (!any) {
    throw std::invalid_argument("root_test: all coefficients vanish");
  }
  return exp(-worst_log);
}

/// Root-test estimate of the radius of convergence over n in [N/2, N]. The
/// half-order estimate uses [N/4, N/2]; estimates more than a factor 2 apart,
/// or coefficients still growing geometrically at the end, mark the result
/// unreliable.
template <class Scalar>
RadiusEstimate<Scalar> conformal_radius_estimate(const LinearizationSeries<Scalar> &s)
{
  using std::abs;
  const std::size_t n = s.order();
  if (n < kMinRadiusOrder) {
    throw std::invalid_argument("conformal_radius_estimate: order must be at least " +
                                std::to_string(kMinRadiusOrder));
  }
  RadiusEstimate<Scalar> est{root_test(s, n / 2, n), root_test(s, n / 4, n / 2), true, {}};
  Scalar ratio = est.r_hat / est.r_hat_half_order;
  if (ratio > Scalar(2) || ratio < Scalar(0.5)) {
    est.reliable = false;
    est.note = "estimates at orders N/2 and N differ by more than a factor 2";
  }
  if (!(est.r_hat > Scalar(0))) {
    est.reliable = false;
    est.note = "nonpositive radius";
  }
  return est;
}

template <class Scalar>
struct InnerRadiusProbe {
  Scalar rho_hat;
  /// Radius of the sampled circle, 0.98 r_hat.
  Scalar circle_radius;
  /// |b_N| R^N, a proxy for the truncation error on the circle.
  Scalar tail_estimate;
  bool tail_ok = true;
};

inline constexpr double kProbeRadiusFraction = 0.98;

/// min |phi(w)| over `samples` equispaced points on |w| = 0.98 r_hat, using
/// the truncated series. Flags the probe when the tail estimate exceeds 1% of
/// the minimum.
template <class Scalar>
InnerRadiusProbe<Scalar> inner_radius_probe(const LinearizationSeries<Scalar> &s,
                                            const Scalar &r_hat, std::size_t samples,
                                            const Scalar &two_pi)
{
  using std::abs;
  using std::cos;
  using std::pow;
  using std::sin;
  if (samples < 1) {
    throw std::invalid_argument("inner_radius_probe: samples must be positive");
  }
  InnerRadiusProbe<Scalar> out;
  out.circle_radius = r_hat * Scalar(kProbeRadiusFraction);
  bool first = true;
  for (std::size_t k = 0; k < samples; ++k) {
    Scalar t = two_pi * Scalar(static_cast<double>(k)) / Scalar(static_cast<double>(samples));
    std::complex<Scalar> w(out.circle_radius * cos(t), out.circle_radius * sin(t));
    Scalar m = abs(evaluate(s, w));
    if (first || m < out.rho_hat) {
      out.rho_hat = m;
      first = false;
    }
  }
  out.tail_estimate =
      abs(s.coeffs.back()) * pow(out.circle_radius, Scalar(static_cast<double>(s.order())));
  out.tail_ok = out.tail_estimate <= out.rho_hat / Scalar(100);
  return out;
}

/// lambda = exp(2 pi i theta) at the current working precision.
std::complex<Real> rotation_multiplier(const CFExpansion &cf);

/// Series for P_theta at `prec` bits. The returned values keep the precision
/// they were computed with; the caller's working precision is restored.
LinearizationSeries<Real> linearization_coeffs(const CFExpansion &cf, std::size_t order, int prec);

/// Convenience wrappers for Real series that open a matching precision scope.
RadiusEstimate<Real> conformal_radius_estimate(const CFExpansion &cf, std::size_t order, int prec);
InnerRadiusProbe<Real> inner_radius_probe(const LinearizationSeries<Real> &s, const Real &r_hat,
                                          std::size_t samples);

/// 4x / (1 + x)^2, exact. x must lie in [0, 1].
Rational koebe_bound_F(const Rational &x);

struct RatioRow {
  std::size_t n = 0;
  CFExpansion perturbed;
  Real r_hat_perturbed;
  /// r_hat(theta(A, n)) * A.
  Real scaled;
  Real r_hat_theta;
  Real deviation;
  bool reliable = true;
};

struct RatioExperiment {
  Rational A;
  std::size_t order = 0;
  std::vector<RatioRow> rows;
  /// Deviation at the largest n is strictly below that at the smallest n and
  /// every estimate is reliable.
  bool trend = false;
  bool reliable = true;
};

/// For theta = prefix followed by ones, estimates r(theta(A, n)) A for each n
/// in [n_first, n_last] next to r(theta), all at the same order and precision.
RatioExperiment radius_ratio_experiment(const std::vector<Integer> &prefix, const Rational &A,
                                        std::size_t n_first, std::size_t n_last,
                                        std::size_t order, int prec);

} // namespace dyncomp
