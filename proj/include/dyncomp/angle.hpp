#pragma once

#include "dyncomp/numeric.hpp"

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dyncomp {

/// Exact point of the circle R/Z, stored as a reduced rational in [0, 1).
class Angle {
public:
  Angle() = default;
  Angle(Integer num, Integer den);
  explicit Angle(const Rational &value);

  /// Accepts "num/den" or a decimal string; the value is reduced mod 1.
  static Angle parse(std::string_view text);

  const Rational &value() const { return value_; }
  Integer numerator() const { return value_.get_num(); }
  Integer denominator() const { return value_.get_den(); }

  /// "num/den" in lowest terms, including "0/1".
  std::string str() const;
  double to_double() const { return value_.get_d(); }

  friend bool operator==(const Angle &a, const Angle &b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Angle &a, const Angle &b)
  {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

private:
  Rational value_{0};
};

/// The doubling map x -> 2x mod 1.
Angle doubled(const Angle &a);

/// k-fold doubling, 2^k x mod 1.
Angle doubled(const Angle &a, unsigned long k);

/// Length of the shorter arc between a and b, in [0, 1/2].
Rational circle_distance(const Angle &a, const Angle &b);
Rational circle_distance(const Rational &a, const Rational &b);

/// Both preimages under doubling: {a/2, a/2 + 1/2}.
std::pair<Angle, Angle> halve_preimages(const Angle &a);

/// Sorts by representative in [0, 1). Throws std::invalid_argument on
/// duplicate angles.
std::vector<Angle> cyclic_sort(std::vector<Angle> angles);

/// Exact period of a under doubling if a is periodic (odd denominator), 0 for
/// strictly preperiodic angles.
unsigned long doubling_period(const Angle &a);

} // namespace dyncomp
