#pragma once

#include "dyncomp/numeric.hpp"

#include "json.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dyncomp {

/// Partial quotients [r_1, r_2, ...] of x = 1/(r_1 + 1/(r_2 + ...)) in (0, 1).
/// The expansion is `quotients` followed by `tail` repeated forever; an empty
/// tail means the expansion is finite.
class CFExpansion {
public:
  CFExpansion() = default;
  CFExpansion(std::vector<Integer> quotients, std::vector<Integer> tail = {});

  /// "1,1,1:rep=1", "cf:2:rep=2", "rep=1,2" or ":rep=1,2", "1,1,2".
  static CFExpansion parse(std::string_view text);
  static CFExpansion from_json(const nlohmann::json &j);
  nlohmann::json to_json() const;
  std::string str() const;

  const std::vector<Integer> &quotients() const { return quotients_; }
  const std::vector<Integer> &tail() const { return tail_; }
  bool is_finite() const { return tail_.empty(); }

  /// r_k, 1-based, expanding the periodic tail.
  Integer quotient(std::size_t k) const;

  /// Number of quotients available; SIZE_MAX for periodic tails.
  std::size_t available() const;

  /// The expansion with the first k quotients removed: [r_{k+1}, r_{k+2}, ...].
  CFExpansion shifted(std::size_t k) const;

  friend bool operator==(const CFExpansion &, const CFExpansion &) = default;

private:
  std::vector<Integer> quotients_;
  std::vector<Integer> tail_;
};

/// p_k/q_k together with the raw (unreduced-by-construction, but coprime)
/// numerator and denominator from the three-term recurrence.
struct Convergent {
  Integer p;
  Integer q;
  Rational value() const { return Rational(p, q); }
};

/// First n convergents, k = 1..n, with p_1/q_1 = 1/r_1.
std::vector<Convergent> convergents(const CFExpansion &cf, std::size_t n);

/// Exact canonical expansion of a rational in (0, 1).
CFExpansion cf_expand(const Rational &x);

/// A real known through rational brackets: called with a bit budget, returns
/// [lo, hi] containing the value with hi - lo <= 2^-bits.
using RealOracle = std::function<std::pair<Rational, Rational>(int bits)>;

struct CertifiedExpansion {
  /// Certified leading quotients. A prefix of an irrational may end in 1, so
  /// this is a plain list rather than a canonical CFExpansion.
  std::vector<Integer> quotients;
  /// The bracket collapsed to 0: the value is the rational [quotients].
  bool terminated = false;
  /// True when the requested number of quotients was certified or the
  /// expansion terminated.
  bool complete = false;
  /// Why extraction stopped early, empty when complete.
  std::string reason;
};

/// Extracts up to `max_quotients` partial quotients that are certified by the
/// bracket returned at `budget_bits`. Quotients are never guessed: when the
/// bracket straddles a quotient boundary extraction stops and says so.
CertifiedExpansion cf_expand(const RealOracle &oracle, int budget_bits,
                             std::size_t max_quotients);

/// Value of the expansion at the current working precision. Periodic tails
/// use the closed-form quadratic surd.
Real cf_value(const CFExpansion &cf);

/// theta_1..theta_n of the Gauss map, theta_{k+1} = {1/theta_k}, each
/// evaluated from the shifted expansion rather than by iterating the map.
std::vector<Real> gauss_orbit(const CFExpansion &cf, std::size_t n);

/// Partial sums S_1..S_N of sum_n theta_1...theta_{n-1} log(1/theta_n).
std::vector<Real> brjuno_partial_sums(const CFExpansion &cf, std::size_t terms);

/// S_N of the above.
Real brjuno_sum(const CFExpansion &cf, std::size_t terms);

/// True iff every partial quotient, including the tail, is <= bound.
bool is_bounded_type(const CFExpansion &cf, const Integer &bound);

/// [r_1..r_n, floor(A^{q_n}), 1, 1, ...] where q_n is the denominator of
/// [r_1..r_n]. A must exceed 1.
CFExpansion perturbed_cf(const std::vector<Integer> &prefix, const Rational &A);

} // namespace dyncomp
