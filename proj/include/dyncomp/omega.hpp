#pragma once

#include "dyncomp/numeric.hpp"
#include "dyncomp/rectilinear.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dyncomp {

enum class Direction { increasing, decreasing };

/// Rational sequence k -> term(k), k >= 1, known to be monotone. Every query
/// checks monotonicity against all earlier terms (computed once and cached)
/// and the declared limit bracket; a failure throws InvariantViolation.
class MonotoneRationalSequence {
public:
  using Term = std::function<Rational(long)>;

  MonotoneRationalSequence(Direction direction, Term term, std::string description = "",
                           std::optional<std::pair<Rational, Rational>> limit_bracket = {});

  /// Parses an expression in k such as "1/4-4^-k" (integers, k, + - * / ^ and
  /// parentheses; exponents must be integers), or "builtin:toy", which is
  /// 1/4 - 4^-k when increasing and 1/3 + 4^-k when decreasing.
  static MonotoneRationalSequence parse(Direction direction, const std::string &text);

  Rational operator()(long k) const;

  Direction direction() const { return direction_; }
  const std::string &description() const { return description_; }
  const std::optional<std::pair<Rational, Rational>> &limit_bracket() const { return bracket_; }

private:
  Direction direction_;
  Term term_;
  std::string description_;
  std::optional<std::pair<Rational, Rational>> bracket_;
  std::shared_ptr<std::vector<Rational>> cache_;
};

/// The domain built from the square Q = [-1, 1]^2 and the slit rectangles
/// S_n \ (L_n u R_n), with a_n increasing and b_n decreasing. Each queried
/// index must satisfy 0 <= a_n < b_n < 1.
class OmegaDomain {
public:
  OmegaDomain(MonotoneRationalSequence a, MonotoneRationalSequence b);

  Rational a(long n) const;
  Rational b(long n) const;

  const MonotoneRationalSequence &a_sequence() const { return a_; }
  const MonotoneRationalSequence &b_sequence() const { return b_; }

private:
  void check(long n) const;

  MonotoneRationalSequence a_;
  MonotoneRationalSequence b_;
};

/// 3^e as an exact rational, e of either sign.
Rational pow3(long e);

struct OmegaRectangles {
  /// S_n = (-b_n, b_n) x (3^-n, 3^(1-n)]; stored by its closure.
  Rect S;
  /// L_n = [-b_n, a_n] x [8 3^(-n-1), 3^(1-n)].
  Rect L;
  /// R_n = [-a_n, b_n] x [5 3^(-n-1), 2 3^-n].
  Rect R;
};

OmegaRectangles rectangles(const OmegaDomain &dom, long n);

/// Exact membership in the depth-n truncation (C \ Q) u U_{k<=n} S_k \ (L_k u R_k).
bool in_truncation(const OmegaDomain &dom, long n, const RPoint &p);

/// Membership in the domain itself, decided from depth N: points of Q with
/// 0 < y <= 3^-N and |x| < b_N may belong to deeper rectangles and are
/// undecided.
Membership in_domain(const OmegaDomain &dom, long N, const RPoint &p);

/// Boundary of the depth-n truncation as closed polylines, including the
/// segment y = 3^-n, |x| < b_n that closes it from below.
std::vector<Polyline> build_gamma_n(const OmegaDomain &dom, long n);

/// gamma_n = {0} x [2 3^-n, 8 3^(-n-1)].
struct Crosscut {
  RPoint low;
  RPoint high;

  Rational diameter() const { return Rational(high.y - low.y); }
  bool contains(const RPoint &p) const
  {
    return p.x == low.x && low.y <= p.y && p.y <= high.y;
  }
};

Crosscut crosscut_chain(long n);

/// omega_n = (0, 7 3^(-n-1)).
RPoint marked_point(long n);

/// Where the endpoints of gamma_n sit, checked exactly rather than assumed.
struct CrosscutIncidence {
  /// Lower endpoint on the top edge of R_n.
  bool low_on_R_top = false;
  /// Upper endpoint on the bottom edge of L_n.
  bool high_on_L_bottom = false;
  /// Interior points of gamma_n lie in the truncation at depth n.
  bool interior_in_domain = false;
};

CrosscutIncidence crosscut_incidence(const OmegaDomain &dom, long n);

/// Checks, in the depth-(n + 2) truncation, that removing gamma_n separates
/// the truncation and that gamma_(n+1) lies in the component not containing
/// the base point (2, 0) outside Q.
bool crosscut_nested(const OmegaDomain &dom, long n);

/// Inner [-a_k, a_k] x {0} and outer [-b_k, b_k] x {0} approximants of the
/// principal impression and the impression, stored by half-widths.
struct ImpressionSegments {
  Rational inner_half_width;
  Rational outer_half_width;
};

ImpressionSegments impression_segments(const OmegaDomain &dom, long k);

/// Hausdorff distance between Gamma_n and Gamma_m sampled at `spacing`.
double gamma_hausdorff(const OmegaDomain &dom, long n, long m, double spacing);

} // namespace dyncomp
