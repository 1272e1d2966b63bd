#pragma once

#include "dyncomp/angle.hpp"
#include "dyncomp/continued_fraction.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dyncomp {

/// Closed arc [lo, lo + width] of R/Z traversed counterclockwise. lo is kept
/// in [0, 1) and width in [0, 1).
struct AngleInterval {
  Rational lo{0};
  Rational width{0};

  AngleInterval() = default;
  AngleInterval(const Rational &start, const Rational &length);

  /// Representative of the far end; may exceed 1 when the arc wraps.
  Rational hi() const { return Rational(lo + width); }
  bool contains(const Rational &x) const;
  bool contains(const AngleInterval &other) const;
  /// x lies in the open arc (lo, lo + width).
  bool contains_strictly(const Rational &x) const;
  bool intersects(const AngleInterval &other) const;

  friend bool operator==(const AngleInterval &, const AngleInterval &) = default;
};

/// Image under doubling: [2 lo, 2 lo + 2 width]. Throws PrecisionExhausted
/// once the image is wider than 1/4.
AngleInterval doubled(const AngleInterval &arc);

/// Intersection of two arcs; at most two pieces, degenerate points dropped.
std::vector<AngleInterval> intersect(const AngleInterval &a, const AngleInterval &b);

/// The closed half-circle L with endpoints gamma and gamma + 1/2 that contains
/// alpha. All three points are known through brackets.
struct HalfCircleArc {
  AngleInterval endpoint_low;  ///< bracket of gamma
  AngleInterval endpoint_high; ///< bracket of gamma + 1/2
  AngleInterval alpha;         ///< bracket of alpha, contained in inner()

  /// Points certainly in L: from the top of the gamma bracket to the bottom of
  /// the antipodal one.
  AngleInterval inner() const;
  /// Smallest arc certainly containing L.
  AngleInterval outer() const;
  /// Closure of the points certainly outside L; its interior is the
  /// certain part of the open complementary arc.
  AngleInterval gap() const;
};

/// Brackets alpha through external_angle at exponent `prec` (width 2^{2-prec})
/// and halves it. Throws PrecisionExhausted when neither preimage half-circle
/// certainly contains the alpha bracket.
HalfCircleArc build_arc(const CFExpansion &cf, int prec);

/// Largest orbit length followed when looking for the cycle of a rational.
inline constexpr long kMembershipOrbitCap = 1L << 16;

/// Membership of an exact angle in the set of angles whose forward orbit
/// stays in L. Outside when some D^k(a), k <= depth, lies in the interior of
/// arc.gap(); inside when the whole eventual cycle stays in the interior of
/// arc.inner(); undecided otherwise.
Membership membership(const Angle &a, const HalfCircleArc &arc, int depth);

/// Bracket version, relative to the depth: outside when some image bracket
/// lies in the interior of the gap, inside when all images D^k, k <= depth,
/// stay in the interior of inner().
Membership membership(const AngleInterval &a, const HalfCircleArc &arc, int depth);

struct CantorCover {
  int depth = 0;
  /// Closed, pairwise disjoint arcs with dyadic endpoints, sorted by lo.
  std::vector<AngleInterval> arcs;
  Rational hausdorff_bound;
};

/// Bits beyond `prec` used when rounding L outward to a dyadic grid.
inline constexpr int kCoverGridExtraBits = 8;

/// Complement of the first `depth` preimage generations of the open gap:
/// cover(0) is L rounded outward to a dyadic grid and
/// cover(n) = cover(0) ∩ D^{-1}(cover(n - 1)).
CantorCover cover(const HalfCircleArc &arc, int depth, int prec);
CantorCover cover(const CFExpansion &cf, int depth, int prec);

/// Brackets of D^k(alpha), k = 0..count-1, by exact doubling of the alpha
/// bracket. Throws PrecisionExhausted with the required exponent when a
/// bracket would grow past 1/4.
std::vector<AngleInterval> dense_orbit(const CFExpansion &cf, std::size_t count, int prec);

struct SemiconjugacyReport {
  enum class Status { pass, fail, undecided };
  Status status = Status::pass;
  std::size_t count = 0;
  int prec = 0;
  /// Exponent given to external_angle so that every bracket has width
  /// <= 2^-prec.
  int alpha_exponent = 0;
  /// Orbit indices involved in the first disagreement or overlap.
  std::optional<std::pair<std::size_t, std::size_t>> first_violation;
  std::string detail;
};

std::string to_string(SemiconjugacyReport::Status s);

/// Compares the cyclic order of D^k(alpha), k < count, with that of
/// k theta mod 1. Brackets of D^k(alpha) have width at most 2^-prec; two
/// overlapping brackets make the report undecided rather than failed.
SemiconjugacyReport semiconjugacy_check(const CFExpansion &cf, std::size_t count, int prec);

/// Hausdorff distance between two nonempty unions of closed arcs under the
/// circle metric.
Rational arc_hausdorff(const std::vector<AngleInterval> &a, const std::vector<AngleInterval> &b);

} // namespace dyncomp
