#include "dyncomp/julia.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace dyncomp {

namespace {

constexpr double kBailout = 1e10;

struct Sample {
  bool escaped = false;
  double estimate = 0; // exterior distance estimate, escaped samples only
};

Sample sample(std::complex<double> c, std::complex<double> z, int max_iter)
{
  std::complex<double> dz(1, 0);
  std::complex<double> saved = z;
  int period_window = 1;
  int since_save = 0;
  for (int k = 0; k < max_iter; ++k) {
    double r2 = std::norm(z);
    if (r2 > kBailout * kBailout) {
      double r = std::sqrt(r2);
      return {true, r * std::log(r) / std::abs(dz)};
    }
    dz = 2.0 * z * dz;
    z = z * z + c;
    // Attracting cycles: the orbit returns to a saved point.
    if (std::norm(z - saved) < 1e-28) {
      return {false, 0};
    }
    if (++since_save == period_window) {
      saved = z;
      since_save = 0;
      period_window *= 2;
    }
  }
  return {false, 0};
}

template <class Fn>
void parallel_rows(std::size_t rows, unsigned threads, Fn &&fn)
{
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, rows));
  if (threads <= 1) {
    for (std::size_t r = 0; r < rows; ++r) {
      fn(r);
    }
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t r = t; r < rows; r += threads) {
        fn(r);
      }
    });
  }
}

} // namespace

Complex c_of_theta(const Rational &theta)
{
  Real t = 2 * pi() * to_real(theta);
  Complex lambda(cos(t), sin(t));
  return lambda / Real(2) - lambda * lambda / Real(4);
}

Complex c_of_theta(const CFExpansion &cf)
{
  Real t = 2 * pi() * cf_value(cf);
  Complex lambda(cos(t), sin(t));
  return lambda / Real(2) - lambda * lambda / Real(4);
}

double escape_bound(std::complex<double> c) { return 0.5 + std::sqrt(0.25 + std::abs(c)); }

double PixelGrid::cell_side() const { return std::ldexp(1.0, -resolution_exponent); }

std::complex<double> PixelGrid::center(std::size_t col, std::size_t row) const
{
  const double h = half_width.get_d();
  const double s = cell_side();
  return {-h + (static_cast<double>(col) + 0.5) * s, -h + (static_cast<double>(row) + 0.5) * s};
}

std::vector<std::complex<double>> PixelGrid::centers(CellClass which) const
{
  std::vector<std::complex<double>> out;
  for (std::size_t row = 0; row < side; ++row) {
    for (std::size_t col = 0; col < side; ++col) {
      if (at(col, row) == which) {
        out.push_back(center(col, row));
      }
    }
  }
  return out;
}

std::size_t PixelGrid::count(CellClass which) const
{
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), which));
}

PixelGrid render_julia(std::complex<double> c, int n, const RenderOptions &options)
{
  if (n < 0 || n > kMaxResolutionExponent) {
    throw std::invalid_argument("render_julia: resolution exponent must lie in [0, " +
                                std::to_string(kMaxResolutionExponent) + "]");
  }
  if (!(options.safety_factor >= 1)) {
    throw std::invalid_argument("render_julia: safety factor must be at least 1");
  }
  PixelGrid grid;
  grid.resolution_exponent = n;
  grid.c = c;
  grid.safety_factor = options.safety_factor;
  grid.max_iter = options.max_iter;
  grid.half_width = Rational(static_cast<long>(std::ceil((escape_bound(c) + 0.25) * 4)), 4);

  const double h = grid.half_width.get_d();
  const double s = grid.cell_side();
  const std::size_t side = static_cast<std::size_t>(std::llround(2 * h / s));
  grid.side = side;

  // Corner lattice (side + 1)^2 and cell centers side^2.
  const std::size_t lattice = side + 1;
  std::vector<Sample> corners(lattice * lattice);
  std::vector<Sample> centers(side * side);
  parallel_rows(lattice, options.threads, [&](std::size_t row) {
    const double y = -h + static_cast<double>(row) * s;
    for (std::size_t col = 0; col < lattice; ++col) {
      const double x = -h + static_cast<double>(col) * s;
      corners[row * lattice + col] = sample(c, {x, y}, options.max_iter);
    }
    if (row < side) {
      const double yc = y + 0.5 * s;
      for (std::size_t col = 0; col < side; ++col) {
        const double x = -h + (static_cast<double>(col) + 0.5) * s;
        centers[row * side + col] = sample(c, {x, yc}, options.max_iter);
      }
    }
  });

  auto corner = [&](long col, long row) -> const Sample & {
    return corners[static_cast<std::size_t>(row) * lattice + static_cast<std::size_t>(col)];
  };
  auto center = [&](long col, long row) -> const Sample & {
    return centers[static_cast<std::size_t>(row) * side + static_cast<std::size_t>(col)];
  };
  const long iside = static_cast<long>(side);

  // Squared distance, in half-cell units, from the center of (col, row) to the
  // nearest escaping sample in the surrounding 5x5 block; -1 when none.
  auto nearest_escape = [&](long col, long row) {
    long best = -1;
    auto consider = [&](long dx2, long dy2) {
      long d = dx2 * dx2 + dy2 * dy2;
      if (best < 0 || d < best) {
        best = d;
      }
    };
    for (long dr = -2; dr <= 2; ++dr) {
      for (long dc = -2; dc <= 2; ++dc) {
        long cc = col + dc;
        long rr = row + dr;
        if (cc < 0 || rr < 0 || cc >= iside || rr >= iside) {
          continue;
        }
        if (center(cc, rr).escaped) {
          consider(2 * dc, 2 * dr);
        }
        for (long oy = 0; oy <= 1; ++oy) {
          for (long ox = 0; ox <= 1; ++ox) {
            if (corner(cc + ox, rr + oy).escaped) {
              consider(2 * (dc + ox) - 1, 2 * (dr + oy) - 1);
            }
          }
        }
      }
    }
    return best;
  };

  const double sf = options.safety_factor;
  grid.cells.assign(side * side, CellClass::borderline);
  parallel_rows(side, options.threads, [&](std::size_t urow) {
    const long row = static_cast<long>(urow);
    for (long col = 0; col < iside; ++col) {
      const Sample &m = center(col, row);
      int escaped = m.escaped ? 1 : 0;
      for (long oy = 0; oy <= 1; ++oy) {
        for (long ox = 0; ox <= 1; ++ox) {
          escaped += corner(col + ox, row + oy).escaped ? 1 : 0;
        }
      }
      CellClass cls = CellClass::borderline;
      if (escaped != 0 && escaped != 5) {
        cls = CellClass::near;
      } else if (escaped == 5) {
        if (sf * m.estimate <= s) {
          cls = CellClass::near;
        } else if (m.estimate >= 2 * sf * s) {
          cls = CellClass::far;
        }
      } else {
        long d = nearest_escape(col, row);
        if (d < 0) {
          cls = CellClass::far;
        } else if (d <= 4) {
          cls = CellClass::near; // within one cell side
        }
      }
      grid.cells[urow * side + static_cast<std::size_t>(col)] = cls;
    }
  });
  return grid;
}

} // namespace dyncomp
