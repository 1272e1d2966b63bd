#include "dyncomp/rectilinear.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace dyncomp {

namespace {

void sort_unique(std::vector<Rational> &v)
{
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool collinear(const RPoint &a, const RPoint &b, const RPoint &c)
{
  return (a.x == b.x && b.x == c.x) || (a.y == b.y && b.y == c.y);
}

} // namespace

bool operator<(const RPoint &a, const RPoint &b)
{
  int cx = cmp(a.x, b.x);
  return cx != 0 ? cx < 0 : cmp(a.y, b.y) < 0;
}

std::vector<RSegment> grid_boundary(std::vector<Rational> xs, std::vector<Rational> ys,
                                    const RegionPredicate &inside, bool outside)
{
  sort_unique(xs);
  sort_unique(ys);
  if (xs.size() < 2 || ys.size() < 2) {
    throw std::invalid_argument("grid_boundary: need at least two coordinates per axis");
  }
  const long nx = static_cast<long>(xs.size()) - 1;
  const long ny = static_cast<long>(ys.size()) - 1;
  auto mid = [](const Rational &a, const Rational &b) { return Rational((a + b) / 2); };

  std::vector<char> cells(static_cast<std::size_t>(nx * ny));
  for (long j = 0; j < ny; ++j) {
    for (long i = 0; i < nx; ++i) {
      cells[static_cast<std::size_t>(j * nx + i)] =
          inside({mid(xs[i], xs[i + 1]), mid(ys[j], ys[j + 1])});
    }
  }
  auto cell = [&](long i, long j) -> bool {
    if (i < 0 || j < 0 || i >= nx || j >= ny) {
      return outside;
    }
    return cells[static_cast<std::size_t>(j * nx + i)];
  };

  std::vector<RSegment> out;
  for (long i = 0; i <= nx; ++i) {
    for (long j = 0; j < ny; ++j) {
      bool left = cell(i - 1, j);
      bool right = cell(i, j);
      bool edge = inside({xs[i], mid(ys[j], ys[j + 1])});
      if (!(left == right && right == edge)) {
        out.push_back({{xs[i], ys[j]}, {xs[i], ys[j + 1]}});
      }
    }
  }
  for (long j = 0; j <= ny; ++j) {
    for (long i = 0; i < nx; ++i) {
      bool below = cell(i, j - 1);
      bool above = cell(i, j);
      bool edge = inside({mid(xs[i], xs[i + 1]), ys[j]});
      if (!(below == above && above == edge)) {
        out.push_back({{xs[i], ys[j]}, {xs[i + 1], ys[j]}});
      }
    }
  }
  return out;
}

std::vector<Polyline> chain_segments(const std::vector<RSegment> &segments)
{
  std::map<RPoint, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incident[segments[s].a].push_back(s);
    incident[segments[s].b].push_back(s);
  }
  std::vector<char> used(segments.size(), 0);
  auto walk = [&](const RPoint &start) {
    Polyline line{start};
    RPoint at = start;
    for (;;) {
      auto &list = incident[at];
      auto it = std::find_if(list.begin(), list.end(), [&](std::size_t s) { return !used[s]; });
      if (it == list.end()) {
        break;
      }
      used[*it] = 1;
      const RSegment &seg = segments[*it];
      at = seg.a == at ? seg.b : seg.a;
      line.push_back(at);
      if (at == start) {
        break;
      }
    }
    return line;
  };

  std::vector<Polyline> raw;
  // Open chains start at odd-degree vertices.
  for (auto &[p, list] : incident) {
    if (list.size() % 2 == 1) {
      while (std::any_of(list.begin(), list.end(), [&](std::size_t s) { return !used[s]; })) {
        raw.push_back(walk(p));
      }
    }
  }
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s]) {
      raw.push_back(walk(segments[s].a));
    }
  }

  std::vector<Polyline> out;
  for (auto &line : raw) {
    const bool closed = line.size() > 2 && line.front() == line.back();
    Polyline merged;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i > 0 && i + 1 < line.size() && collinear(merged.back(), line[i], line[i + 1])) {
        continue;
      }
      merged.push_back(line[i]);
    }
    if (closed && merged.size() > 3 && collinear(merged[merged.size() - 2], merged[0], merged[1])) {
      merged.erase(merged.begin());
      merged.back() = merged.front();
    }
    out.push_back(std::move(merged));
  }
  return out;
}

std::vector<std::complex<double>> sample_polylines(const std::vector<Polyline> &lines,
                                                   double spacing)
{
  if (!(spacing > 0)) {
    throw std::invalid_argument("sample_polylines: spacing must be positive");
  }
  std::vector<std::complex<double>> out;
  for (const auto &line : lines) {
    if (line.empty()) {
      continue;
    }
    out.emplace_back(line[0].x.get_d(), line[0].y.get_d());
    for (std::size_t i = 1; i < line.size(); ++i) {
      std::complex<double> a(line[i - 1].x.get_d(), line[i - 1].y.get_d());
      std::complex<double> b(line[i].x.get_d(), line[i].y.get_d());
      const auto steps = static_cast<long>(std::ceil(std::abs(b - a) / spacing));
      for (long k = 1; k <= steps; ++k) {
        out.push_back(a + (b - a) * (static_cast<double>(k) / static_cast<double>(steps)));
      }
    }
  }
  return out;
}

} // namespace dyncomp
