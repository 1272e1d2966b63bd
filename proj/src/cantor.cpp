#include "dyncomp/cantor.hpp"

#include "dyncomp/cardioid.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dyncomp {

namespace {

// Offset of x past the start of the arc, in [0, 1).
Rational offset(const AngleInterval &arc, const Rational &x) { return frac(x - arc.lo); }

// `inner` lies in the open arc (outer.lo, outer.lo + outer.width).
bool strictly_inside(const AngleInterval &outer, const AngleInterval &inner)
{
  Rational d = offset(outer, inner.lo);
  return d > 0 && d + inner.width < outer.width;
}

std::vector<AngleInterval> merge_sorted(std::vector<AngleInterval> arcs)
{
  std::sort(arcs.begin(), arcs.end(),
            [](const AngleInterval &a, const AngleInterval &b) { return a.lo < b.lo; });
  std::vector<AngleInterval> out;
  for (auto &arc : arcs) {
    if (!out.empty() && arc.lo <= out.back().hi()) {
      Rational hi = std::max(out.back().hi(), arc.hi());
      out.back().width = hi - out.back().lo;
    } else {
      out.push_back(arc);
    }
  }
  if (out.size() >= 2 && out.back().hi() - 1 >= out.front().lo) {
    Rational hi = std::max(out.back().hi(), Rational(out.front().hi() + 1));
    out.back().width = hi - out.back().lo;
    out.erase(out.begin());
  }
  for (const auto &arc : out) {
    if (arc.width >= 1) {
      throw InvariantViolation("merged arcs cover the whole circle");
    }
  }
  return out;
}

Rational round_down(const Rational &x, long bits)
{
  Rational scale = pow2(bits);
  return Rational(floor(x * scale)) / scale;
}

Rational round_up(const Rational &x, long bits)
{
  Rational scale = pow2(bits);
  return Rational(ceil(x * scale)) / scale;
}

std::pair<AngleInterval, AngleInterval> preimages(const AngleInterval &arc)
{
  Rational lo = arc.lo / 2;
  Rational w = arc.width / 2;
  return {AngleInterval(lo, w), AngleInterval(lo + Rational(1, 2), w)};
}

Rational distance_to(const Rational &x, const std::vector<AngleInterval> &arcs)
{
  Rational best = 1;
  for (const auto &arc : arcs) {
    if (arc.contains(x)) {
      return 0;
    }
    best = std::min({best, circle_distance(x, arc.lo), circle_distance(x, arc.hi())});
  }
  return best;
}

Rational directed_hausdorff(const std::vector<AngleInterval> &from,
                            const std::vector<AngleInterval> &to)
{
  std::vector<AngleInterval> target = to;
  std::sort(target.begin(), target.end(),
            [](const AngleInterval &a, const AngleInterval &b) { return a.lo < b.lo; });
  std::vector<Rational> candidates;
  for (const auto &arc : from) {
    candidates.push_back(arc.lo);
    candidates.push_back(frac(arc.hi()));
  }
  // The distance to `to` peaks at the midpoints of its gaps.
  for (std::size_t i = 0; i < target.size(); ++i) {
    const auto &next = target[(i + 1) % target.size()];
    Rational gap_start = target[i].hi();
    Rational gap_len = frac(next.lo - gap_start);
    if (target.size() == 1) {
      gap_len = 1 - target[i].width;
    }
    Rational mid = frac(gap_start + gap_len / 2);
    for (const auto &arc : from) {
      if (arc.contains(mid)) {
        candidates.push_back(mid);
        break;
      }
    }
  }
  Rational worst = 0;
  for (const auto &x : candidates) {
    worst = std::max(worst, distance_to(x, target));
  }
  return worst;
}

} // namespace

AngleInterval::AngleInterval(const Rational &start, const Rational &length)
    : lo(frac(start)), width(length)
{
  if (length < 0 || length >= 1) {
    throw std::invalid_argument("arc width must lie in [0, 1), got " + dyncomp::to_string(length));
  }
}

bool AngleInterval::contains(const Rational &x) const { return offset(*this, x) <= width; }

bool AngleInterval::contains(const AngleInterval &other) const
{
  return offset(*this, other.lo) + other.width <= width;
}

bool AngleInterval::contains_strictly(const Rational &x) const
{
  Rational d = offset(*this, x);
  return d > 0 && d < width;
}

bool AngleInterval::intersects(const AngleInterval &other) const
{
  return contains(other.lo) || other.contains(lo);
}

AngleInterval doubled(const AngleInterval &arc)
{
  Rational w = arc.width * 2;
  if (w > Rational(1, 4)) {
    throw PrecisionExhausted("doubling a bracket of width " + to_string(arc.width) +
                             " exceeds 1/4");
  }
  return AngleInterval(arc.lo * 2, w);
}

std::vector<AngleInterval> intersect(const AngleInterval &a, const AngleInterval &b)
{
  std::vector<AngleInterval> out;
  Rational start = offset(a, b.lo);
  for (const Rational &s0 : {Rational(start - 1), start}) {
    Rational s = std::max(s0, Rational(0));
    Rational e = std::min(Rational(s0 + b.width), a.width);
    if (s < e) {
      out.emplace_back(a.lo + s, e - s);
    }
  }
  return out;
}

AngleInterval HalfCircleArc::inner() const
{
  return AngleInterval(endpoint_low.hi(), frac(endpoint_high.lo - endpoint_low.hi()));
}

AngleInterval HalfCircleArc::outer() const
{
  return AngleInterval(endpoint_low.lo, Rational(1, 2) + endpoint_low.width);
}

AngleInterval HalfCircleArc::gap() const
{
  return AngleInterval(endpoint_high.hi(), Rational(1, 2) - endpoint_low.width);
}

HalfCircleArc build_arc(const CFExpansion &cf, int prec)
{
  if (cf.is_finite()) {
    throw std::invalid_argument("build_arc: theta must be irrational");
  }
  ExternalAngle e = external_angle(cf, prec);
  AngleInterval alpha(e.approx->value() - e.bound, e.bound * 2);
  for (const auto &gamma : {preimages(alpha).first, preimages(alpha).second}) {
    HalfCircleArc arc{gamma, AngleInterval(gamma.lo + Rational(1, 2), gamma.width), alpha};
    if (arc.inner().contains(alpha)) {
      return arc;
    }
  }
  throw PrecisionExhausted("build_arc: exponent " + std::to_string(prec) +
                           " does not separate alpha from the endpoints of L");
}

Membership membership(const Angle &a, const HalfCircleArc &arc, int depth)
{
  const AngleInterval gap = arc.gap();
  const AngleInterval inner = arc.inner();
  Angle x = a;
  for (int k = 0; k <= depth; ++k) {
    if (gap.contains_strictly(x.value())) {
      return Membership::outside;
    }
    x = doubled(x);
  }
  std::set<Rational> seen;
  x = a;
  for (long step = 0; step < kMembershipOrbitCap; ++step) {
    if (!inner.contains_strictly(x.value())) {
      return Membership::undecided;
    }
    if (!seen.insert(x.value()).second) {
      return Membership::inside;
    }
    x = doubled(x);
  }
  return Membership::undecided;
}

Membership membership(const AngleInterval &a, const HalfCircleArc &arc, int depth)
{
  const AngleInterval gap = arc.gap();
  const AngleInterval inner = arc.inner();
  AngleInterval x = a;
  bool all_inside = true;
  for (int k = 0; k <= depth; ++k) {
    if (strictly_inside(gap, x)) {
      return Membership::outside;
    }
    all_inside = all_inside && strictly_inside(inner, x);
    if (k == depth) {
      break;
    }
    try {
      x = doubled(x);
    } catch (const PrecisionExhausted &) {
      return Membership::undecided;
    }
  }
  return all_inside ? Membership::inside : Membership::undecided;
}

CantorCover cover(const HalfCircleArc &arc, int depth, int prec)
{
  if (depth < 0) {
    throw std::invalid_argument("cover: depth must be nonnegative");
  }
  const long grid = prec + kCoverGridExtraBits;
  const AngleInterval outer = arc.outer();
  Rational lo = round_down(outer.lo, grid);
  Rational hi = round_up(outer.hi(), grid);
  const AngleInterval base(lo, hi - lo);

  CantorCover out;
  out.arcs = {base};
  for (int n = 1; n <= depth; ++n) {
    std::vector<AngleInterval> next;
    for (const auto &a : out.arcs) {
      auto [p0, p1] = preimages(a);
      for (const auto &p : {p0, p1}) {
        for (auto &piece : intersect(base, p)) {
          next.push_back(std::move(piece));
        }
      }
    }
    out.arcs = merge_sorted(std::move(next));
    if (out.arcs.empty()) {
      throw InvariantViolation("cover: generation " + std::to_string(n) + " is empty");
    }
    if (out.arcs.size() > (std::size_t{1} << (n + 1))) {
      throw InvariantViolation("cover: generation " + std::to_string(n) + " has " +
                               std::to_string(out.arcs.size()) + " arcs");
    }
  }
  out.depth = depth;
  out.hausdorff_bound = pow2(-depth);
  return out;
}

CantorCover cover(const CFExpansion &cf, int depth, int prec)
{
  return cover(build_arc(cf, prec), depth, prec);
}

std::vector<AngleInterval> dense_orbit(const CFExpansion &cf, std::size_t count, int prec)
{
  HalfCircleArc arc = build_arc(cf, prec);
  std::vector<AngleInterval> out;
  if (count == 0) {
    return out;
  }
  out.reserve(count);
  out.push_back(arc.alpha);
  for (std::size_t k = 1; k < count; ++k) {
    try {
      out.push_back(doubled(out.back()));
    } catch (const PrecisionExhausted &) {
      throw PrecisionExhausted("dense_orbit: " + std::to_string(count) +
                               " iterates need exponent >= " + std::to_string(count + 3) +
                               ", got " + std::to_string(prec));
    }
  }
  return out;
}

std::string to_string(SemiconjugacyReport::Status s)
{
  switch (s) {
  case SemiconjugacyReport::Status::pass:
    return "pass";
  case SemiconjugacyReport::Status::fail:
    return "fail";
  case SemiconjugacyReport::Status::undecided:
    return "undecided";
  }
  return "undecided";
}

SemiconjugacyReport semiconjugacy_check(const CFExpansion &cf, std::size_t count, int prec)
{
  if (count == 0) {
    throw std::invalid_argument("semiconjugacy_check: count must be positive");
  }
  if (prec < 2) {
    throw std::invalid_argument("semiconjugacy_check: prec must be at least 2");
  }
  SemiconjugacyReport report;
  report.count = count;
  report.prec = prec;
  report.alpha_exponent = prec + static_cast<int>(count) + 1;
  std::vector<AngleInterval> orbit = dense_orbit(cf, count, report.alpha_exponent);

  std::vector<std::size_t> by_angle(count);
  std::iota(by_angle.begin(), by_angle.end(), std::size_t{0});
  std::sort(by_angle.begin(), by_angle.end(),
            [&](std::size_t i, std::size_t j) { return orbit[i].lo < orbit[j].lo; });
  for (std::size_t i = 0; count > 1 && i < count; ++i) {
    std::size_t a = by_angle[i];
    std::size_t b = by_angle[(i + 1) % count];
    if (orbit[a].intersects(orbit[b])) {
      report.status = SemiconjugacyReport::Status::undecided;
      report.first_violation = std::pair{std::min(a, b), std::max(a, b)};
      report.detail = "brackets of D^" + std::to_string(a) + " and D^" + std::to_string(b) +
                      " overlap at width 2^-" + std::to_string(prec);
      return report;
    }
  }

  std::vector<std::size_t> by_rotation(count);
  std::iota(by_rotation.begin(), by_rotation.end(), std::size_t{0});
  {
    WorkingPrecision wp(std::max(prec, 64) + 64);
    Real theta = cf_value(cf);
    std::vector<Real> keys(count);
    for (std::size_t k = 0; k < count; ++k) {
      Real x = theta * k;
      keys[k] = x - boost::multiprecision::floor(x);
    }
    std::sort(by_rotation.begin(), by_rotation.end(),
              [&](std::size_t i, std::size_t j) { return keys[i] < keys[j]; });
  }

  auto rotate_to_zero = [](std::vector<std::size_t> &v) {
    std::rotate(v.begin(), std::find(v.begin(), v.end(), std::size_t{0}), v.end());
  };
  rotate_to_zero(by_angle);
  rotate_to_zero(by_rotation);
  for (std::size_t i = 0; i < count; ++i) {
    if (by_angle[i] != by_rotation[i]) {
      report.status = SemiconjugacyReport::Status::fail;
      report.first_violation = std::pair{by_angle[i], by_rotation[i]};
      report.detail = "position " + std::to_string(i) + ": D^" + std::to_string(by_angle[i]) +
                      " in angle order, k = " + std::to_string(by_rotation[i]) +
                      " in rotation order";
      return report;
    }
  }
  return report;
}

Rational arc_hausdorff(const std::vector<AngleInterval> &a, const std::vector<AngleInterval> &b)
{
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("arc_hausdorff: empty arc set");
  }
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

} // namespace dyncomp
