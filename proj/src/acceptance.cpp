#include "dyncomp/acceptance.hpp"

#include "dyncomp/cantor.hpp"
#include "dyncomp/cardioid.hpp"
#include "dyncomp/continued_fraction.hpp"
#include "dyncomp/hausdorff.hpp"
#include "dyncomp/julia.hpp"
#include "dyncomp/lavrentiev.hpp"
#include "dyncomp/omega.hpp"
#include "dyncomp/rays.hpp"
#include "dyncomp/siegel.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace dyncomp {

namespace {

struct Outcome {
  bool held = false;
  std::string detail;
};

std::string fmt(double x)
{
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

const CFExpansion &golden()
{
  static const CFExpansion cf = CFExpansion::parse("1:rep=1");
  return cf;
}

const CFExpansion &silver()
{
  static const CFExpansion cf = CFExpansion::parse("rep=2");
  return cf;
}

Outcome landing_pairs()
{
  struct Row {
    long p, q;
    const char *minus, *plus;
  };
  const Row rows[] = {{1, 2, "1/3", "2/3"}, {2, 3, "5/7", "6/7"}, {3, 5, "21/31", "22/31"}};
  Outcome out{true, ""};
  for (const auto &r : rows) {
    auto pair = landing_pair(r.p, r.q);
    bool ok = pair.alpha_minus == Angle::parse(r.minus) && pair.alpha_plus == Angle::parse(r.plus);
    out.held = out.held && ok;
    out.detail += std::to_string(r.p) + "/" + std::to_string(r.q) + " -> (" +
                  pair.alpha_minus.str() + ", " + pair.alpha_plus.str() + ") ";
  }
  return out;
}

Outcome orbit_uniqueness()
{
  Outcome out{true, ""};
  std::size_t checked = 0;
  for (int q = 2; q <= 12; ++q) {
    std::map<long, int> count;
    for (const auto &c : scan_rotation_cycles(q)) {
      count[c.p] += 1;
    }
    for (long p = 1; p < q; ++p) {
      const bool coprime = std::gcd(p, static_cast<long>(q)) == 1;
      const int found = count.count(p) ? count[p] : 0;
      if (coprime) {
        ++checked;
        if (found != 1) {
          out.held = false;
          out.detail += "p/q = " + std::to_string(p) + "/" + std::to_string(q) + " has " +
                        std::to_string(found) + " orbits; ";
        }
      } else if (found != 0) {
        out.held = false;
      }
    }
  }
  out.detail += std::to_string(checked) + " rotation numbers, one orbit each";
  return out;
}

Outcome external_angle_stability()
{
  auto e16 = external_angle(golden(), 16);
  auto e24 = external_angle(golden(), 24);
  Rational gap = circle_distance(*e16.approx, *e24.approx);
  bool prefix = e16.iterates.size() >= 3 && e16.iterates[0] == Angle(1, 3) &&
                e16.iterates[1] == Angle(5, 7) && e16.iterates[2] == Angle(21, 31);
  return {gap < pow2(-15) && prefix,
          "|alpha_16 - alpha_24| = " + fmt(gap.get_d()) + " (< 2^-15 = " + fmt(pow2(-15).get_d()) +
              "), iterates start 1/3, 5/7, 21/31: " + (prefix ? "yes" : "no")};
}

Outcome semiconjugacy()
{
  Outcome out{true, ""};
  for (const auto *cf : {&golden(), &silver()}) {
    auto r = semiconjugacy_check(*cf, 200, 240);
    out.held = out.held && r.status == SemiconjugacyReport::Status::pass;
    out.detail += cf->str() + ": " + to_string(r.status);
    if (r.status != SemiconjugacyReport::Status::pass) {
      out.detail += " (" + r.detail + ")";
    }
    out.detail += "; ";
  }
  return out;
}

Outcome brjuno_closed_form()
{
  WorkingPrecision wp(128);
  Real theta = cf_value(golden());
  Real closed = log(1 / theta) / (1 - theta);
  auto sums = brjuno_partial_sums(golden(), 50);
  Real err = abs(sums.back() - closed);
  bool monotone = std::is_sorted(sums.begin(), sums.end());
  return {err < 1e-6 && monotone, "S_50 = " + fmt(sums.back().convert_to<double>()) +
                                      ", |S_50 - closed form| = " + fmt(err.convert_to<double>()) +
                                      ", nondecreasing: " + (monotone ? "yes" : "no")};
}

Outcome linearization_identities()
{
  const int prec = 256;
  auto s = linearization_coeffs(golden(), 200, prec);
  WorkingPrecision wp(prec);
  const Real eps = pow(Real(2), -(prec - 16));
  Real b2_err = abs(s.b(2) - Real(1) / (s.lambda * s.lambda - s.lambda));
  auto est = conformal_radius_estimate(s);
  const Real radius = est.r_hat / 2;
  Real worst = 0;
  for (int k = 0; k < 256; ++k) {
    Real t = 2 * pi() * k / 256;
    Complex w(radius * cos(t), radius * sin(t));
    Complex phi = evaluate(s, w);
    Real r = abs(evaluate(s, Complex(s.lambda * w)) - s.lambda * phi - phi * phi);
    worst = r > worst ? r : worst;
  }
  return {b2_err < eps && worst < 1e-10,
          "|b_2 - 1/(lambda^2 - lambda)| = " + fmt(b2_err.convert_to<double>()) +
              ", residual on |w| = r/2: " + fmt(worst.convert_to<double>())};
}

Outcome koebe_sandwich()
{
  Outcome out{true, ""};
  for (const char *text : {"1:rep=1", "rep=2", "rep=1,2"}) {
    auto cf = CFExpansion::parse(text);
    auto s = linearization_coeffs(cf, 512, 256);
    WorkingPrecision wp(256);
    auto est = conformal_radius_estimate(s);
    auto probe = inner_radius_probe(s, est.r_hat, 512);
    bool ok = probe.rho_hat >= Real(0.99) * est.r_hat / 4 && probe.rho_hat <= Real(1.01) * est.r_hat;
    out.held = out.held && ok;
    out.detail += cf.str() + ": rho/r = " + fmt((probe.rho_hat / est.r_hat).convert_to<double>()) +
                  "; ";
  }
  return out;
}

Outcome radius_ratio()
{
  auto ex = radius_ratio_experiment({Integer(1)}, Rational(2), 3, 6, 256, 256);
  std::string detail = "deviations:";
  for (const auto &row : ex.rows) {
    detail += " n=" + std::to_string(row.n) + ":" + fmt(row.deviation.convert_to<double>());
  }
  const bool held = ex.rows.back().deviation < ex.rows.front().deviation;
  if (!ex.reliable) {
    detail += " (estimator flagged unreliable)";
  }
  return {held, detail};
}

Outcome rendering_oracles()
{
  const double tol = 2 * std::ldexp(1.0, -8);
  using cd = std::complex<double>;
  auto circle_grid = render_julia(cd(0, 0), 8);
  auto circle_near = circle_grid.centers(CellClass::near);
  double to_circle = 0;
  for (cd z : circle_near) {
    to_circle = std::max(to_circle, std::abs(std::abs(z) - 1));
  }
  std::vector<cd> circle;
  for (int k = 0; k < 8192; ++k) {
    circle.push_back(std::polar(1.0, 2 * M_PI * k / 8192));
  }
  double from_circle = directed_hausdorff(to_point_set(circle), to_point_set(circle_near));

  auto segment_grid = render_julia(cd(-2, 0), 8);
  auto segment_near = segment_grid.centers(CellClass::near);
  double to_segment = 0;
  for (cd z : segment_near) {
    to_segment = std::max(to_segment, std::abs(z - cd(std::clamp(z.real(), -2.0, 2.0), 0)));
  }
  std::vector<cd> segment;
  for (int k = 0; k <= 8192; ++k) {
    segment.emplace_back(-2 + 4.0 * k / 8192, 0);
  }
  double from_segment = directed_hausdorff(to_point_set(segment), to_point_set(segment_near));
  double c0 = std::max(to_circle, from_circle);
  double c2 = std::max(to_segment, from_segment);
  return {c0 <= tol && c2 <= tol, "d_H(near, circle) = " + fmt(c0) + ", d_H(near, [-2,2]) = " +
                                      fmt(c2) + " (tolerance " + fmt(tol) + ")"};
}

Outcome ray_landing()
{
  using cd = std::complex<double>;
  auto right = trace_ray(cd(-2, 0), Angle(0, 1), 1e-6);
  auto left = trace_ray(cd(-2, 0), Angle(1, 2), 1e-6);
  double e_right = std::abs(right.points.back() - cd(2, 0));
  double e_left = std::abs(left.points.back() - cd(-2, 0));
  double radial = 0;
  for (const Angle &a : {Angle(0, 1), Angle(1, 3), Angle(1, 7), Angle(5, 12), Angle(9, 10)}) {
    auto ray = trace_ray(cd(0, 0), a, 1e-6);
    for (std::size_t i = 0; i < ray.points.size(); ++i) {
      cd expected = std::polar(std::exp(ray.potentials[i]), 2 * M_PI * a.to_double());
      radial = std::max(radial, std::abs(ray.points[i] - expected) / std::abs(expected));
    }
  }
  return {e_right < 1e-3 && e_left < 1e-3 && radial < 1e-9,
          "c=-2: |end - 2| = " + fmt(e_right) + ", |end + 2| = " + fmt(e_left) +
              "; c=0 worst relative radial deviation " + fmt(radial)};
}

Outcome lavrentiev()
{
  auto mc = lavrentiev_monte_carlo(100, 20240601);
  return {mc.violations == 0 && mc.results.size() == 100,
          std::to_string(mc.results.size()) + " crosscuts, " + std::to_string(mc.violations) +
              " violations, smallest margin " + fmt(mc.worst_margin)};
}

Outcome omega_gallery()
{
  OmegaDomain dom(MonotoneRationalSequence::parse(Direction::increasing, "builtin:toy"),
                  MonotoneRationalSequence::parse(Direction::decreasing, "builtin:toy"));
  Outcome out{true, "d_H(Gamma_n, Gamma_n+2):"};
  for (long n = 2; n <= 4; ++n) {
    double d = gamma_hausdorff(dom, n, n + 2, 1.0 / 1024);
    bool ok = d <= 2 * pow3(-n).get_d();
    out.held = out.held && ok;
    out.detail += " n=" + std::to_string(n) + ":" + fmt(d) + "/" + fmt(2 * pow3(-n).get_d());
  }
  bool chain = true;
  bool marked = true;
  bool sandwich = true;
  for (long n = 1; n <= 8; ++n) {
    chain = chain && crosscut_chain(n).diameter() == 2 * pow3(-n - 1);
    marked = marked && crosscut_chain(n).contains(marked_point(n));
    if (n < 8) {
      auto now = impression_segments(dom, n);
      auto next = impression_segments(dom, n + 1);
      sandwich = sandwich && now.inner_half_width <= next.inner_half_width &&
                 next.inner_half_width <= next.outer_half_width &&
                 next.outer_half_width <= now.outer_half_width;
    }
  }
  out.held = out.held && chain && marked && sandwich;
  out.detail += std::string("; diam(gamma_n) = 2*3^-(n+1): ") + (chain ? "yes" : "no") +
                "; omega_n on gamma_n: " + (marked ? "yes" : "no") +
                "; sandwich monotone: " + (sandwich ? "yes" : "no");
  return out;
}

struct Criterion {
  int id;
  const char *title;
  double limit;
  std::function<Outcome()> run;
};

const std::vector<Criterion> &criteria()
{
  static const std::vector<Criterion> all{
      {1, "exact landing pairs", 1, landing_pairs},
      {2, "orbit uniqueness q <= 12", 10, orbit_uniqueness},
      {3, "external-angle stability", 30, external_angle_stability},
      {4, "semi-conjugacy order N=200 at 2^-240", 60, semiconjugacy},
      {5, "Brjuno closed form", 1, brjuno_closed_form},
      {6, "linearization identities", 10, linearization_identities},
      {7, "Koebe sandwich", 30, koebe_sandwich},
      {8, "radius-ratio trend", 300, radius_ratio},
      {9, "rendering oracles", 60, rendering_oracles},
      {10, "ray landing oracles", 30, ray_landing},
      {11, "Lavrentiev Monte Carlo", 60, lavrentiev},
      {12, "Omega gallery", 30, omega_gallery},
  };
  return all;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const std::vector<int> &only)
{
  std::vector<CriterionResult> out;
  for (const auto &c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) {
      continue;
    }
    CriterionResult r;
    r.id = c.id;
    r.title = c.title;
    r.limit_seconds = c.limit;
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = c.run();
      r.check_held = o.held;
      r.detail = o.detail;
    } catch (const std::exception &e) {
      r.check_held = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.passed = r.check_held && r.seconds < r.limit_seconds;
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_line(const CriterionResult &r)
{
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.title
     << ": " << r.detail << "  [" << fmt(r.seconds) << " s, limit " << r.limit_seconds << " s]";
  return os.str();
}

} // namespace dyncomp
