#include "dyncomp/siegel.hpp"

#include <algorithm>

namespace dyncomp {

std::complex<Real> rotation_multiplier(const CFExpansion &cf)
{
  Real t = 2 * pi() * cf_value(cf);
  return {cos(t), sin(t)};
}

LinearizationSeries<Real> linearization_coeffs(const CFExpansion &cf, std::size_t order, int prec)
{
  if (cf.is_finite()) {
    throw std::invalid_argument("linearization_coeffs: theta must be irrational");
  }
  WorkingPrecision wp(prec);
  return linearization_series(rotation_multiplier(cf), order, prec);
}

RadiusEstimate<Real> conformal_radius_estimate(const CFExpansion &cf, std::size_t order, int prec)
{
  auto series = linearization_coeffs(cf, order, prec);
  WorkingPrecision wp(prec);
  return conformal_radius_estimate(series);
}

InnerRadiusProbe<Real> inner_radius_probe(const LinearizationSeries<Real> &s, const Real &r_hat,
                                          std::size_t samples)
{
  WorkingPrecision wp(s.precision_bits);
  return inner_radius_probe(s, r_hat, samples, Real(2 * pi()));
}

Rational koebe_bound_F(const Rational &x)
{
  if (x < 0 || x > 1) {
    throw std::invalid_argument("koebe_bound_F: x must lie in [0, 1]");
  }
  Rational d = 1 + x;
  return Rational(4 * x / (d * d));
}

RatioExperiment radius_ratio_experiment(const std::vector<Integer> &prefix, const Rational &A,
                                        std::size_t n_first, std::size_t n_last,
                                        std::size_t order, int prec)
{
  if (A <= 1) {
    throw std::invalid_argument("radius_ratio_experiment: A must exceed 1");
  }
  if (n_first < 1 || n_last < n_first) {
    throw std::invalid_argument("radius_ratio_experiment: empty n range");
  }
  const CFExpansion theta(prefix, {Integer(1)});
  RatioExperiment out;
  out.A = A;
  out.order = order;

  auto base = conformal_radius_estimate(theta, order, prec);
  WorkingPrecision wp(prec);
  const Real a = to_real(A);
  for (std::size_t n = n_first; n <= n_last; ++n) {
    std::vector<Integer> head;
    for (std::size_t k = 1; k <= n; ++k) {
      head.push_back(theta.quotient(k));
    }
    RatioRow row;
    row.n = n;
    row.perturbed = perturbed_cf(head, A);
    auto est = conformal_radius_estimate(row.perturbed, order, prec);
    row.r_hat_perturbed = est.r_hat;
    row.scaled = est.r_hat * a;
    row.r_hat_theta = base.r_hat;
    row.deviation = abs(row.scaled - base.r_hat);
    row.reliable = est.reliable && base.reliable;
    out.reliable = out.reliable && row.reliable;
    out.rows.push_back(std::move(row));
  }
  out.trend = out.reliable && out.rows.back().deviation < out.rows.front().deviation;
  return out;
}

} // namespace dyncomp
