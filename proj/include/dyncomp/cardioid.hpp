#pragma once

#include "dyncomp/angle.hpp"
#include "dyncomp/continued_fraction.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace dyncomp {

/// A q-cycle of the doubling map in cyclic order (alpha_0 < ... < alpha_{q-1})
/// that doubling rotates by p positions: D(alpha_i) = alpha_{(i+p) mod q}.
struct PeriodicOrbit {
  std::vector<Angle> angles;
  long p = 0;
  long q = 0;

  Rational rotation() const { return Rational(p, q); }
};

/// Largest period handled by the exhaustive k/(2^q - 1) scan.
inline constexpr int kMaxBruteForcePeriod = 28;

/// Every q-cycle of doubling whose points are permuted as a rotation, found by
/// scanning all k/(2^q - 1). Cost is 2^q; q <= kMaxBruteForcePeriod.
std::vector<PeriodicOrbit> scan_rotation_cycles(int q);

/// The unique cycle with combinatorial rotation number p/q, by exhaustive
/// scan. Throws std::invalid_argument unless 0 < p < q and gcd(p, q) = 1.
PeriodicOrbit find_orbit(long p, long q);

/// The same cycle built directly from its binary itinerary: the i-th smallest
/// point has digit k equal to 1 iff (i + k p) mod q >= q - p. Linear in q, so
/// usable for the large denominators met when approximating irrationals.
PeriodicOrbit rotation_orbit(long p, long q);

/// Dispatches to find_orbit for small q and rotation_orbit above the scan
/// limit.
PeriodicOrbit orbit_for(long p, long q);

/// Rotation number of a doubling cycle, given in any order. Throws
/// InvariantViolation when the list is not a single cycle or the index shift
/// is not constant.
Rational rotation_number(const std::vector<Angle> &cycle);

struct LandingPair {
  Angle alpha_minus;
  Angle alpha_plus;
};

/// The two points of O_{p/q} at minimal circle distance, alpha_minus first in
/// counterclockwise order across the gap. For q = 2 the two gaps tie and the
/// pair is returned in numeric order.
LandingPair landing_pair(long p, long q);

/// Result of approximating the external angle of the main-cardioid parameter
/// with internal angle theta.
struct ExternalAngle {
  /// Rational theta: the exact landing pair.
  std::optional<LandingPair> exact;
  /// Irrational theta: alpha_-(p_m/q_m) at the stopping index.
  std::optional<Angle> approx;
  /// Claimed |approx - alpha(theta)| <= 2^{1-n}.
  Rational bound;
  int precision_exponent = 0;
  /// alpha_-(p_k/q_k) for every convergent in (0, 1) up to the stopping one.
  std::vector<Angle> iterates;
  std::vector<Convergent> used_convergents;
};

/// Walks the convergents of theta, computing alpha_-(p_k/q_k), and stops at
/// the first k whose iterate is within 2^-n of the previous one. Convergents
/// outside (0, 1) (p_1/q_1 = 1/1 when r_1 = 1) are skipped.
/// Throws PrecisionExhausted when the stopping rule has not fired once the
/// denominators exceed `max_period`.
ExternalAngle external_angle(const CFExpansion &cf, int n, long max_period = 1L << 20);

} // namespace dyncomp
