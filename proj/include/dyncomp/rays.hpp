#pragma once

#include "dyncomp/angle.hpp"
#include "dyncomp/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <exception>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace dyncomp {

namespace ray_detail {

inline double from_rational(const Rational &q, const double *) { return q.get_d(); }
inline Real from_rational(const Rational &q, const Real *) { return to_real(q); }
inline double two_pi(const double *) { return 2 * M_PI; }
inline Real two_pi(const Real *) { return 2 * pi(); }

template <class Scalar>
Scalar scalar(const Rational &q)
{
  return from_rational(q, static_cast<const Scalar *>(nullptr));
}

} // namespace ray_detail

/// Points on the external ray R_alpha of f_c, ordered by decreasing potential.
template <class Scalar>
struct RayTrace {
  Angle angle;
  std::vector<std::complex<Scalar>> points;
  /// Green potential t of each point: G(z) = t.
  std::vector<Scalar> potentials;
};

struct RayOptions {
  /// The trace starts on |z| = start_radius, where the Boettcher map is close
  /// to the identity.
  double start_radius = 1e6;
  int steps_per_halving = 8;
  /// Relative Newton step size accepted as converged.
  double tolerance = 1e-14;
  int max_newton = 60;
  /// Bisections of a rejected potential step before giving up.
  int max_refinements = 24;
};

/// Potential-descent tracing. Each step lowers t by the factor
/// 2^(-1/steps_per_halving) and solves f^k(z) = exp(2^k t + 2 pi i 2^k alpha)
/// by damped Newton from the previous point, with k minimal such that the
/// target lies outside the start circle. A rejected step is retried at half
/// the potential decrement; PrecisionExhausted once the refinements run out.
/// Meaningful only for connected J_c, which is not checked.
template <class Scalar>
RayTrace<Scalar> trace_ray(const std::complex<Scalar> &c, const Angle &alpha, double t_min,
                           const RayOptions &options = {})
{
  using std::abs;
  using std::cos;
  using std::exp;
  using std::isfinite;
  using std::log;
  using std::sin;
  using std::sqrt;
  using C = std::complex<Scalar>;
  if (!(t_min > 0)) {
    throw std::invalid_argument("trace_ray: t_min must be positive");
  }
  if (options.steps_per_halving < 1) {
    throw std::invalid_argument("trace_ray: steps_per_halving must be positive");
  }
  const double t0 = std::log(options.start_radius);
  if (t_min >= t0) {
    throw std::invalid_argument("trace_ray: t_min must lie below the start potential");
  }
  const Scalar two_pi = ray_detail::two_pi(static_cast<const Scalar *>(nullptr));

  // w_k(t) = exp(2^k t + 2 pi i 2^k alpha), the angle doubled exactly.
  auto target = [&](double t, unsigned k) {
    Scalar modulus = exp(Scalar(std::ldexp(t, static_cast<int>(k))));
    Scalar arg = two_pi * ray_detail::scalar<Scalar>(doubled(alpha, k).value());
    return C(modulus * cos(arg), modulus * sin(arg));
  };
  auto depth = [&](double t) {
    unsigned k = 0;
    while (std::ldexp(t, static_cast<int>(k)) < t0) {
      ++k;
    }
    return k;
  };
  // f^k(z) and its derivative.
  auto orbit = [&](const C &z, unsigned k, C &derivative) {
    C w = z;
    derivative = C(Scalar(1));
    for (unsigned j = 0; j < k; ++j) {
      derivative = Scalar(2) * w * derivative;
      w = w * w + c;
    }
    return w;
  };
  auto finite = [&](const C &z) { return isfinite(z.real()) && isfinite(z.imag()); };
  auto solve = [&](C &z, double t) {
    const unsigned k = depth(t);
    const C w = target(t, k);
    C d;
    C r = orbit(z, k, d) - w;
    const Scalar tol(options.tolerance);
    for (int it = 0; it < options.max_newton; ++it) {
      if (abs(r) <= tol * abs(w)) {
        return true;
      }
      if (!finite(r) || d == C(Scalar(0))) {
        return false;
      }
      const C step = r / d;
      Scalar lambda(1);
      bool accepted = false;
      for (int back = 0; back < 30 && !accepted; ++back) {
        C trial = z - lambda * step;
        C dt;
        C rt = orbit(trial, k, dt) - w;
        if (finite(rt) && abs(rt) < abs(r)) {
          z = trial;
          r = rt;
          d = dt;
          accepted = true;
        }
        lambda /= 2;
      }
      if (!accepted) {
        return false;
      }
      if (abs(lambda * 2 * step) <= tol * (Scalar(1) + abs(z))) {
        return true;
      }
    }
    return false;
  };

  RayTrace<Scalar> trace;
  trace.angle = alpha;
  const Scalar arg0 = two_pi * ray_detail::scalar<Scalar>(alpha.value());
  C z(Scalar(options.start_radius) * cos(arg0), Scalar(options.start_radius) * sin(arg0));
  double t = t0;
  trace.points.push_back(z);
  trace.potentials.push_back(Scalar(t));
  const double factor = std::exp2(-1.0 / options.steps_per_halving);
  while (t > t_min) {
    double next = std::max(t * factor, t_min);
    int refinements = 0;
    C candidate = z;
    while (!solve(candidate, next)) {
      if (++refinements > options.max_refinements) {
        throw PrecisionExhausted("trace_ray: root finding failed near potential " +
                                 std::to_string(next));
      }
      candidate = z;
      next = std::sqrt(t * next);
    }
    z = candidate;
    t = next;
    trace.points.push_back(z);
    trace.potentials.push_back(Scalar(t));
  }
  return trace;
}

/// Traces several rays in double precision, one thread per ray, results in
/// input order. Multiprecision traces share the process-wide MPFR precision
/// and stay sequential.
inline std::vector<RayTrace<double>> trace_rays(const std::complex<double> &c,
                                                const std::vector<Angle> &angles, double t_min,
                                                const RayOptions &options = {})
{
  std::vector<RayTrace<double>> out(angles.size());
  std::vector<std::exception_ptr> errors(angles.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < angles.size(); ++i) {
      pool.emplace_back([&, i] {
        try {
          out[i] = trace_ray(c, angles[i], t_min, options);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
  }
  for (auto &e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return out;
}

/// Result of pulling back a periodic ray cycle.
template <class Scalar>
struct CyclePullback {
  std::vector<Angle> angles;
  /// Current endpoint of each ray, indexed like `angles`.
  std::vector<std::complex<Scalar>> endpoints;
  /// log2 of the common Green potential of the endpoints.
  double log2_potential = 0;
  std::size_t rounds = 0;

  /// Largest pairwise distance between endpoints.
  Scalar spread() const
  {
    using std::abs;
    Scalar worst(0);
    for (std::size_t i = 0; i < endpoints.size(); ++i) {
      for (std::size_t j = i + 1; j < endpoints.size(); ++j) {
        Scalar d = abs(endpoints[i] - endpoints[j]);
        worst = d > worst ? d : worst;
      }
    }
    return worst;
  }
};

/// Extends the rays of a doubling cycle toward potential 0 without root
/// finding: once each ray is traced to t_start, the ray at alpha is continued
/// from potential t to t/2 by the branch of sqrt(z - c) at the image ray's
/// endpoint nearest its own previous endpoint. Every round halves the common
/// potential. Throws std::invalid_argument when doubling does not permute the
/// angles.
template <class Scalar>
CyclePullback<Scalar> pull_back_cycle(const std::complex<Scalar> &c,
                                      const std::vector<Angle> &angles, double t_start,
                                      std::size_t rounds, const RayOptions &options = {})
{
  using std::abs;
  using std::sqrt;
  std::map<Angle, std::size_t> index;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    if (!index.emplace(angles[i], i).second) {
      throw std::invalid_argument("pull_back_cycle: repeated angle");
    }
  }
  std::vector<std::size_t> image(angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    auto it = index.find(doubled(angles[i]));
    if (it == index.end()) {
      throw std::invalid_argument("pull_back_cycle: angles are not closed under doubling");
    }
    image[i] = it->second;
  }
  CyclePullback<Scalar> out;
  out.angles = angles;
  if constexpr (std::is_same_v<Scalar, double>) {
    for (const auto &ray : trace_rays(c, angles, t_start, options)) {
      out.endpoints.push_back(ray.points.back());
    }
  } else {
    for (const Angle &a : angles) {
      out.endpoints.push_back(trace_ray(c, a, t_start, options).points.back());
    }
  }
  out.log2_potential = std::log2(t_start);
  std::vector<std::complex<Scalar>> next(angles.size());
  for (std::size_t r = 0; r < rounds; ++r) {
    for (std::size_t i = 0; i < angles.size(); ++i) {
      std::complex<Scalar> root = sqrt(out.endpoints[image[i]] - c);
      next[i] = abs(root - out.endpoints[i]) <= abs(-root - out.endpoints[i]) ? root : -root;
    }
    out.endpoints.swap(next);
    out.log2_potential -= 1;
  }
  out.rounds = rounds;
  return out;
}

} // namespace dyncomp
