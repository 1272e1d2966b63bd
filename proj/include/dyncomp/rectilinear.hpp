#pragma once

#include "dyncomp/numeric.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace dyncomp {

struct RPoint {
  Rational x;
  Rational y;

  friend bool operator==(const RPoint &, const RPoint &) = default;
};

bool operator<(const RPoint &a, const RPoint &b);

/// Closed axis-parallel rectangle [x0, x1] x [y0, y1].
struct Rect {
  Rational x0, x1, y0, y1;

  bool contains(const RPoint &p) const
  {
    return x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1;
  }
  Rational width() const { return Rational(x1 - x0); }
  Rational height() const { return Rational(y1 - y0); }
  friend bool operator==(const Rect &, const Rect &) = default;
};

/// Axis-parallel segment.
struct RSegment {
  RPoint a;
  RPoint b;
};

/// Vertex list; closed when front() == back().
using Polyline = std::vector<RPoint>;

/// Region predicate evaluated exactly at rational points.
using RegionPredicate = std::function<bool(const RPoint &)>;

/// Boundary of a region that is constant on the open cells, open edges and
/// vertices of the grid xs x ys. Outside the grid the region is taken to
/// equal `outside`. An edge belongs to the boundary unless it and both
/// adjacent cells agree.
std::vector<RSegment> grid_boundary(std::vector<Rational> xs, std::vector<Rational> ys,
                                    const RegionPredicate &inside, bool outside);

/// Chains segments sharing endpoints into polylines and drops vertices where
/// the direction does not change. Closed chains repeat their first vertex.
std::vector<Polyline> chain_segments(const std::vector<RSegment> &segments);

/// Points along each polyline, at most `spacing` apart, including vertices.
std::vector<std::complex<double>> sample_polylines(const std::vector<Polyline> &lines,
                                                   double spacing);

} // namespace dyncomp
