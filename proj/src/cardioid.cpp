#include "dyncomp/cardioid.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dyncomp {

namespace {

// orbit_for switches from the exhaustive scan to the itinerary construction
// above this period; the scan is 2^q work per call.
constexpr long kDispatchScanLimit = 16;

void check_rotation_pair(long p, long q)
{
  if (q < 2 || p <= 0 || p >= q || std::gcd(p, q) != 1) {
    throw std::invalid_argument("rotation number p/q needs 0 < p < q and gcd(p, q) = 1, got " +
                                std::to_string(p) + "/" + std::to_string(q));
  }
}

} // namespace

std::vector<PeriodicOrbit> scan_rotation_cycles(int q)
{
  if (q < 1 || q > kMaxBruteForcePeriod) {
    throw std::invalid_argument("scan_rotation_cycles: period must be in [1, " +
                                std::to_string(kMaxBruteForcePeriod) + "]");
  }
  const std::uint64_t modulus = (std::uint64_t{1} << q) - 1;
  std::vector<bool> seen(modulus, false);
  std::vector<PeriodicOrbit> found;
  std::vector<std::uint64_t> cycle;
  cycle.reserve(static_cast<std::size_t>(q));

  for (std::uint64_t k = 1; k < modulus; ++k) {
    if (seen[k]) {
      continue;
    }
    cycle.clear();
    std::uint64_t x = k;
    do {
      seen[x] = true;
      cycle.push_back(x);
      x = (2 * x) % modulus;
    } while (x != k);
    if (cycle.size() != static_cast<std::size_t>(q)) {
      continue; // exact period is a proper divisor of q
    }
    std::sort(cycle.begin(), cycle.end());
    auto index_of = [&](std::uint64_t v) {
      return static_cast<long>(std::lower_bound(cycle.begin(), cycle.end(), v) - cycle.begin());
    };
    const long shift = index_of((2 * cycle[0]) % modulus);
    bool rotation = true;
    for (long i = 1; i < q && rotation; ++i) {
      long j = index_of((2 * cycle[static_cast<std::size_t>(i)]) % modulus);
      rotation = (j - i + q) % q == shift;
    }
    if (!rotation) {
      continue;
    }
    PeriodicOrbit orbit;
    orbit.p = shift;
    orbit.q = q;
    for (std::uint64_t v : cycle) {
      orbit.angles.emplace_back(Integer(static_cast<unsigned long>(v)),
                                Integer(static_cast<unsigned long>(modulus)));
    }
    found.push_back(std::move(orbit));
  }
  return found;
}

PeriodicOrbit find_orbit(long p, long q)
{
  check_rotation_pair(p, q);
  if (q > kMaxBruteForcePeriod) {
    throw std::invalid_argument("find_orbit: exhaustive scan limited to q <= " +
                                std::to_string(kMaxBruteForcePeriod) +
                                "; use rotation_orbit for larger periods");
  }
  std::vector<PeriodicOrbit> matches;
  for (auto &orbit : scan_rotation_cycles(static_cast<int>(q))) {
    if (orbit.p == p) {
      matches.push_back(std::move(orbit));
    }
  }
  if (matches.size() != 1) {
    throw InvariantViolation("expected a unique orbit with rotation number " + std::to_string(p) +
                             "/" + std::to_string(q) + ", found " +
                             std::to_string(matches.size()));
  }
  return std::move(matches.front());
}

PeriodicOrbit rotation_orbit(long p, long q)
{
  check_rotation_pair(p, q);
  Integer modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), 2, static_cast<unsigned long>(q));
  modulus -= 1;
  PeriodicOrbit orbit;
  orbit.p = p;
  orbit.q = q;
  orbit.angles.reserve(static_cast<std::size_t>(q));
  for (long i = 0; i < q; ++i) {
    Integer num = 0;
    for (long k = 0; k < q; ++k) {
      if ((i + k * p) % q >= q - p) {
        mpz_setbit(num.get_mpz_t(), static_cast<mp_bitcnt_t>(q - 1 - k));
      }
    }
    orbit.angles.emplace_back(num, modulus);
  }
  return orbit;
}

PeriodicOrbit orbit_for(long p, long q)
{
  return q <= kDispatchScanLimit ? find_orbit(p, q) : rotation_orbit(p, q);
}

Rational rotation_number(const std::vector<Angle> &cycle)
{
  if (cycle.empty()) {
    throw InvariantViolation("rotation_number: empty cycle");
  }
  std::vector<Angle> sorted;
  try {
    sorted = cyclic_sort(cycle);
  } catch (const std::invalid_argument &) {
    throw InvariantViolation("rotation_number: repeated angle in cycle");
  }
  const long q = static_cast<long>(sorted.size());
  auto index_of = [&](const Angle &a) -> long {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), a);
    if (it == sorted.end() || *it != a) {
      throw InvariantViolation("rotation_number: " + a.str() + " is not in the cycle");
    }
    return static_cast<long>(it - sorted.begin());
  };
  const long shift = index_of(doubled(sorted[0]));
  for (long i = 1; i < q; ++i) {
    long j = index_of(doubled(sorted[static_cast<std::size_t>(i)]));
    if ((j - i + q) % q != shift) {
      throw InvariantViolation("rotation_number: doubling does not act as a rotation");
    }
  }
  if (std::gcd(shift, q) != 1 && q > 1) {
    throw InvariantViolation("rotation_number: points form several doubling cycles");
  }
  return Rational(shift, q);
}

LandingPair landing_pair(long p, long q)
{
  PeriodicOrbit orbit = orbit_for(p, q);
  const auto &a = orbit.angles;
  const std::size_t n = a.size();
  if (n == 2) {
    return {a[0], a[1]};
  }
  std::size_t best = 0;
  Rational best_gap;
  bool tie = false;
  for (std::size_t i = 0; i < n; ++i) {
    Rational gap = (i + 1 < n) ? Rational(a[i + 1].value() - a[i].value())
                               : Rational(a[0].value() + 1 - a[i].value());
    if (i == 0 || gap < best_gap) {
      best = i;
      best_gap = gap;
      tie = false;
    } else if (gap == best_gap) {
      tie = true;
    }
  }
  if (tie) {
    throw InvariantViolation("landing_pair: minimal gap of O_" + std::to_string(p) + "/" +
                             std::to_string(q) + " is not unique");
  }
  return {a[best], a[(best + 1) % n]};
}

ExternalAngle external_angle(const CFExpansion &cf, int n, long max_period)
{
  if (n < 1) {
    throw std::invalid_argument("external_angle: precision exponent must be positive");
  }
  ExternalAngle out;
  out.precision_exponent = n;

  if (cf.is_finite()) {
    Convergent last = convergents(cf, cf.quotients().size()).back();
    if (!last.p.fits_slong_p() || !last.q.fits_slong_p()) {
      throw std::invalid_argument("external_angle: rational theta too large");
    }
    out.exact = landing_pair(last.p.get_si(), last.q.get_si());
    out.bound = 0;
    out.used_convergents.push_back(last);
    return out;
  }

  const Rational threshold = pow2(-n);
  out.bound = pow2(1 - n);
  for (std::size_t k = 1;; ++k) {
    Convergent conv = convergents(cf, k).back();
    if (conv.p >= conv.q) {
      continue; // 1/1 is not an interior rotation number
    }
    if (conv.q > max_period || !conv.q.fits_slong_p()) {
      throw PrecisionExhausted("external_angle: stopping rule for 2^-" + std::to_string(n) +
                               " not met before the convergent denominators exceed " +
                               std::to_string(max_period));
    }
    Angle alpha = landing_pair(conv.p.get_si(), conv.q.get_si()).alpha_minus;
    out.iterates.push_back(alpha);
    out.used_convergents.push_back(conv);
    const std::size_t m = out.iterates.size();
    if (m >= 2 && circle_distance(out.iterates[m - 1], out.iterates[m - 2]) < threshold) {
      out.approx = alpha;
      return out;
    }
  }
}

} // namespace dyncomp
