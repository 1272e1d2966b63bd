#include "dyncomp/acceptance.hpp"
#include "dyncomp/angle.hpp"
#include "dyncomp/cantor.hpp"
#include "dyncomp/cardioid.hpp"
#include "dyncomp/continued_fraction.hpp"
#include "dyncomp/io.hpp"
#include "dyncomp/julia.hpp"
#include "dyncomp/lavrentiev.hpp"
#include "dyncomp/omega.hpp"
#include "dyncomp/rays.hpp"
#include "dyncomp/siegel.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>

using namespace dyncomp;
using json = nlohmann::json;
using cd = std::complex<double>;

namespace {

struct Settings {
  int prec = kDefaultPrecisionBits;
  std::string out = "dyncomp-out";
  bool json_output = false;
};

/// What a command produced: the structured result, any extra files, and a
/// plain-text rendering for the terminal.
struct Result {
  json value;
  std::vector<std::pair<std::string, std::string>> files;
  std::string text;
  int exit_code = 0;
};

std::string str(const Rational &q) { return to_string(q); }

std::string real_str(const Real &x, int digits = 30) { return x.str(digits); }

std::pair<long, long> parse_pq(const std::string &text)
{
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    throw std::invalid_argument("expected p/q, got \"" + text + "\"");
  }
  std::size_t used_p = 0;
  std::size_t used_q = 0;
  long p = std::stol(text.substr(0, slash), &used_p);
  long q = std::stol(text.substr(slash + 1), &used_q);
  if (used_p != slash || used_q != text.size() - slash - 1) {
    throw std::invalid_argument("expected p/q, got \"" + text + "\"");
  }
  if (q < 2 || p <= 0 || p >= q || std::gcd(p, q) != 1) {
    throw std::invalid_argument("p/q must satisfy 0 < p < q and gcd(p, q) = 1, got " + text);
  }
  return {p, q};
}

cd parse_complex(const std::string &text)
{
  auto comma = text.find(',');
  try {
    if (comma == std::string::npos) {
      return {std::stod(text), 0};
    }
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::logic_error &) {
    throw std::invalid_argument("expected re,im, got \"" + text + "\"");
  }
}

json angles_json(const std::vector<Angle> &angles)
{
  json out = json::array();
  for (const auto &a : angles) {
    out.push_back(a.str());
  }
  return out;
}

json arcs_json(const std::vector<AngleInterval> &arcs)
{
  json out = json::array();
  for (const auto &a : arcs) {
    out.push_back({str(a.lo), str(a.hi())});
  }
  return out;
}

std::string format_double(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------- commands

Result run_angle(const std::string &value, unsigned long doublings)
{
  Angle a = Angle::parse(value);
  std::vector<Angle> images;
  Angle x = a;
  for (unsigned long k = 0; k < doublings; ++k) {
    x = doubled(x);
    images.push_back(x);
  }
  auto [lo, hi] = halve_preimages(a);
  Result r;
  r.value = {{"angle", a.str()},
             {"doublings", angles_json(images)},
             {"period", doubling_period(a)},
             {"preimages", {lo.str(), hi.str()}},
             {"approx", a.to_double()}};
  r.text = a.str() + " period " + std::to_string(doubling_period(a));
  return r;
}

Result run_orbit(const std::string &pq)
{
  auto [p, q] = parse_pq(pq);
  auto orbit = orbit_for(p, q);
  Result r;
  r.value = {{"p", p}, {"q", q}, {"angles", angles_json(orbit.angles)},
             {"rotation", str(orbit.rotation())}};
  r.text = r.value["angles"].dump();
  return r;
}

Result run_landing_pair(const std::string &pq, const std::string &cf_text, int exponent)
{
  Result r;
  if (pq.empty() == cf_text.empty()) {
    throw std::invalid_argument("landing-pair needs exactly one of --pq and --cf");
  }
  if (!pq.empty()) {
    auto [p, q] = parse_pq(pq);
    auto pair = landing_pair(p, q);
    r.value = {{"alpha_minus", pair.alpha_minus.str()}, {"alpha_plus", pair.alpha_plus.str()}};
    r.text = pair.alpha_minus.str() + " " + pair.alpha_plus.str();
    return r;
  }
  auto cf = CFExpansion::parse(cf_text);
  auto e = external_angle(cf, exponent);
  if (e.exact) {
    r.value = {{"alpha_minus", e.exact->alpha_minus.str()},
               {"alpha_plus", e.exact->alpha_plus.str()}};
    r.text = e.exact->alpha_minus.str() + " " + e.exact->alpha_plus.str();
    return r;
  }
  r.value = {{"cf", cf.str()},
             {"exponent", exponent},
             {"alpha", e.approx->str()},
             {"alpha_approx", e.approx->to_double()},
             {"bound", str(e.bound)},
             {"iterates", angles_json(e.iterates)}};
  r.text = e.approx->str() + " +- " + str(e.bound);
  return r;
}

Result run_cantor(const std::string &cf_text, int depth, int prec, std::size_t check)
{
  auto cf = CFExpansion::parse(cf_text);
  auto arc = build_arc(cf, prec);
  auto c = cover(arc, depth, prec);
  Result r;
  r.value = {{"cf", cf.str()},
             {"depth", depth},
             {"prec", prec},
             {"endpoint_low", arcs_json({arc.endpoint_low})[0]},
             {"endpoint_high", arcs_json({arc.endpoint_high})[0]},
             {"alpha", arcs_json({arc.alpha})[0]},
             {"arcs", arcs_json(c.arcs)},
             {"hausdorff_bound", str(c.hausdorff_bound)}};
  r.text = std::to_string(c.arcs.size()) + " arcs at depth " + std::to_string(depth);
  if (check > 0) {
    auto rep = semiconjugacy_check(cf, check, prec);
    r.value["semiconjugacy"] = {{"count", rep.count},
                                {"status", to_string(rep.status)},
                                {"alpha_exponent", rep.alpha_exponent},
                                {"detail", rep.detail}};
    r.text += "; semi-conjugacy " + to_string(rep.status);
  }
  return r;
}

Result run_brjuno(const std::string &cf_text, std::size_t terms, int prec)
{
  auto cf = CFExpansion::parse(cf_text);
  WorkingPrecision wp(prec);
  auto sums = brjuno_partial_sums(cf, terms);
  json partial = json::array();
  for (const auto &s : sums) {
    partial.push_back(real_str(s, 20));
  }
  Result r;
  r.value = {{"cf", cf.str()},
             {"terms", terms},
             {"value", real_str(sums.back(), 20)},
             {"partial_sums", partial}};
  r.text = real_str(sums.back(), 20);
  return r;
}

Result run_cf(const std::string &value, const std::string &cf_text, std::size_t count, int prec)
{
  Result r;
  CFExpansion cf;
  if (!value.empty()) {
    Rational x = parse_rational(value);
    cf = cf_expand(x);
    r.value["input"] = str(x);
  } else {
    cf = CFExpansion::parse(cf_text);
  }
  std::size_t n = std::min(count, cf.available());
  json conv = json::array();
  for (const auto &c : convergents(cf, n)) {
    conv.push_back(str(c.value()));
  }
  WorkingPrecision wp(prec);
  r.value["cf"] = cf.to_json();
  r.value["expansion"] = cf.str();
  r.value["convergents"] = conv;
  r.value["value"] = real_str(cf_value(cf));
  r.text = cf.str() + " = " + real_str(cf_value(cf), 20);
  return r;
}

Result run_radius(const std::string &cf_text, std::size_t order, int prec, std::size_t samples)
{
  auto cf = CFExpansion::parse(cf_text);
  auto s = linearization_coeffs(cf, order, prec);
  WorkingPrecision wp(prec);
  auto est = conformal_radius_estimate(s);
  Result r;
  r.value = {{"cf", cf.str()},
             {"order", order},
             {"r_hat", real_str(est.r_hat, 20)},
             {"r_hat_half_order", real_str(est.r_hat_half_order, 20)},
             {"reliable", est.reliable},
             {"note", est.note}};
  r.text = "r_hat = " + real_str(est.r_hat, 12);
  if (samples > 0) {
    auto probe = inner_radius_probe(s, est.r_hat, samples);
    r.value["rho_hat"] = real_str(probe.rho_hat, 20);
    r.value["probe_radius"] = real_str(probe.circle_radius, 20);
    r.value["tail_estimate"] = real_str(probe.tail_estimate, 6);
    r.value["tail_ok"] = probe.tail_ok;
    r.text += ", rho_hat = " + real_str(probe.rho_hat, 12);
  }
  return r;
}

Result run_ratio(const std::string &prefix_text, const std::string &A_text, std::size_t n_first,
                 std::size_t n_last, std::size_t order, int prec)
{
  std::vector<Integer> prefix;
  std::stringstream ss(prefix_text);
  for (std::string item; std::getline(ss, item, ',');) {
    prefix.emplace_back(item);
  }
  auto ex = radius_ratio_experiment(prefix, parse_rational(A_text), n_first, n_last, order, prec);
  Result r;
  std::string csv = "n,perturbed,r_hat_perturbed,scaled,r_hat_theta,deviation,reliable\n";
  json rows = json::array();
  for (const auto &row : ex.rows) {
    rows.push_back({{"n", row.n},
                    {"perturbed", row.perturbed.str()},
                    {"r_hat_perturbed", real_str(row.r_hat_perturbed, 20)},
                    {"scaled", real_str(row.scaled, 20)},
                    {"r_hat_theta", real_str(row.r_hat_theta, 20)},
                    {"deviation", real_str(row.deviation, 20)},
                    {"reliable", row.reliable}});
    csv += std::to_string(row.n) + "," + row.perturbed.str() + "," +
           real_str(row.r_hat_perturbed, 20) + "," + real_str(row.scaled, 20) + "," +
           real_str(row.r_hat_theta, 20) + "," + real_str(row.deviation, 20) + "," +
           (row.reliable ? "1" : "0") + "\n";
  }
  r.value = {{"A", str(ex.A)}, {"order", order}, {"rows", rows}, {"trend", ex.trend},
             {"reliable", ex.reliable}};
  r.files.emplace_back("ratio.csv", csv);
  r.text = std::string("trend ") + (ex.trend ? "holds" : "does not hold");
  return r;
}

Result run_julia(const std::string &c_text, int res, const RenderOptions &options)
{
  const cd c = parse_complex(c_text);
  auto grid = render_julia(c, res, options);
  std::vector<std::uint8_t> rgb;
  rgb.reserve(3 * grid.side * grid.side);
  for (std::size_t row = grid.side; row-- > 0;) {
    for (std::size_t col = 0; col < grid.side; ++col) {
      std::uint8_t v = 255;
      switch (grid.at(col, row)) {
      case CellClass::near:
        v = 0;
        break;
      case CellClass::borderline:
        v = 160;
        break;
      case CellClass::far:
        v = 255;
        break;
      }
      rgb.insert(rgb.end(), {v, v, v});
    }
  }
  Result r;
  const std::string h = str(grid.half_width);
  r.value = {{"c", {c.real(), c.imag()}},
             {"resolution_exponent", res},
             {"extent", {{"x", {"-" + h, h}}, {"y", {"-" + h, h}}}},
             {"side", grid.side},
             {"safety_factor", options.safety_factor},
             {"max_iter", options.max_iter},
             {"counts",
              {{"near", grid.count(CellClass::near)},
               {"borderline", grid.count(CellClass::borderline)},
               {"far", grid.count(CellClass::far)}}},
             {"image", "julia.ppm"}};
  r.files.emplace_back("julia.ppm", encode_ppm(grid.side, grid.side, rgb));
  r.text = std::to_string(grid.count(CellClass::near)) + " near cells of " +
           std::to_string(grid.cells.size());
  return r;
}

Result run_ray(const std::string &c_text, const std::string &angle_text, double t_min, int steps)
{
  const cd c = parse_complex(c_text);
  const Angle a = Angle::parse(angle_text);
  RayOptions options;
  options.steps_per_halving = steps;
  auto ray = trace_ray(c, a, t_min, options);
  std::string csv = "t,re,im\n";
  for (std::size_t i = 0; i < ray.points.size(); ++i) {
    csv += format_double(ray.potentials[i]) + "," + format_double(ray.points[i].real()) + "," +
           format_double(ray.points[i].imag()) + "\n";
  }
  Result r;
  const cd end = ray.points.back();
  r.value = {{"c", {c.real(), c.imag()}},
             {"angle", a.str()},
             {"t_min", t_min},
             {"points", ray.points.size()},
             {"end", {end.real(), end.imag()}},
             {"end_potential", ray.potentials.back()},
             {"polyline", "ray.csv"}};
  r.files.emplace_back("ray.csv", csv);
  r.text = "end " + format_double(end.real()) + "," + format_double(end.imag());
  return r;
}

json point_json(const RPoint &p) { return {str(p.x), str(p.y)}; }

Result run_omega(const std::string &a_text, const std::string &b_text, long depth,
                 std::size_t pixels)
{
  if (depth < 1) {
    throw std::invalid_argument("depth must be at least 1");
  }
  OmegaDomain dom(MonotoneRationalSequence::parse(Direction::increasing, a_text),
                  MonotoneRationalSequence::parse(Direction::decreasing, b_text));
  json gamma = json::array();
  for (const auto &line : build_gamma_n(dom, depth)) {
    json verts = json::array();
    for (const auto &p : line) {
      verts.push_back(point_json(p));
    }
    gamma.push_back(verts);
  }
  json levels = json::array();
  for (long n = 1; n <= depth; ++n) {
    auto rects = rectangles(dom, n);
    auto cut = crosscut_chain(n);
    auto inc = crosscut_incidence(dom, n);
    auto imp = impression_segments(dom, n);
    auto rect_json = [](const Rect &q) {
      return json{str(q.x0), str(q.x1), str(q.y0), str(q.y1)};
    };
    levels.push_back({{"n", n},
                      {"a_n", str(dom.a(n))},
                      {"b_n", str(dom.b(n))},
                      {"S", rect_json(rects.S)},
                      {"L", rect_json(rects.L)},
                      {"R", rect_json(rects.R)},
                      {"gamma", {point_json(cut.low), point_json(cut.high)}},
                      {"gamma_diameter", str(cut.diameter())},
                      {"omega", point_json(marked_point(n))},
                      {"gamma_low_on_R_top", inc.low_on_R_top},
                      {"gamma_high_on_L_bottom", inc.high_on_L_bottom},
                      {"inner_half_width", str(imp.inner_half_width)},
                      {"outer_half_width", str(imp.outer_half_width)}});
  }
  // Domain at depth: white inside, dark outside, gray for deeper strata.
  std::vector<std::uint8_t> rgb;
  rgb.reserve(3 * pixels * pixels);
  const Rational lo(-5, 4);
  const Rational span(5, 2);
  for (std::size_t row = pixels; row-- > 0;) {
    const Rational y = lo + span * Rational(2 * static_cast<long>(row) + 1,
                                            2 * static_cast<long>(pixels));
    for (std::size_t col = 0; col < pixels; ++col) {
      const Rational x = lo + span * Rational(2 * static_cast<long>(col) + 1,
                                              2 * static_cast<long>(pixels));
      std::uint8_t v = 40;
      switch (in_domain(dom, depth, {x, y})) {
      case Membership::inside:
        v = 255;
        break;
      case Membership::undecided:
        v = 150;
        break;
      case Membership::outside:
        v = 40;
        break;
      }
      rgb.insert(rgb.end(), {v, v, v});
    }
  }
  Result r;
  r.value = {{"a_seq", a_text},
             {"b_seq", b_text},
             {"depth", depth},
             {"gamma_n", gamma},
             {"levels", levels},
             {"image", "omega.ppm"},
             {"extent", {"-5/4", "5/4"}}};
  r.files.emplace_back("omega.ppm", encode_ppm(pixels, pixels, rgb));
  r.text = "Gamma_" + std::to_string(depth) + ": " + std::to_string(gamma.size()) +
           " polyline(s)";
  return r;
}

json lavrentiev_json(const LavrentievResult &x)
{
  return {{"a", x.crosscut.a},
          {"b", x.crosscut.b},
          {"side", x.crosscut.upper ? "upper" : "lower"},
          {"diameter", x.diameter},
          {"epsilon", x.epsilon},
          {"M", x.M},
          {"image_diameter", x.image_diameter},
          {"bound", x.bound},
          {"margin", x.margin},
          {"holds", x.holds}};
}

Result run_lavrentiev(double a, double b, bool lower, std::size_t random, std::uint64_t seed,
                      std::size_t samples)
{
  Result r;
  if (random > 0) {
    auto mc = lavrentiev_monte_carlo(random, seed, samples);
    json rows = json::array();
    for (const auto &x : mc.results) {
      rows.push_back(lavrentiev_json(x));
    }
    r.value = {{"trials", random},
               {"seed", seed},
               {"violations", mc.violations},
               {"worst_margin", mc.worst_margin},
               {"crosscuts", rows}};
    r.text = std::to_string(mc.violations) + " violations in " + std::to_string(random);
    return r;
  }
  auto x = lavrentiev_check({a, b, !lower}, 0, 0, samples);
  r.value = lavrentiev_json(x);
  r.text = std::string(x.holds ? "holds" : "violated") + ", image diameter " +
           format_double(x.image_diameter) + " <= " + format_double(x.bound);
  return r;
}

Result run_accept(const std::vector<int> &only)
{
  Result r;
  json rows = json::array();
  int failed = 0;
  for (const auto &c : run_acceptance(only)) {
    rows.push_back({{"id", c.id},
                    {"title", c.title},
                    {"passed", c.passed},
                    {"check_held", c.check_held},
                    {"seconds", c.seconds},
                    {"limit_seconds", c.limit_seconds},
                    {"detail", c.detail}});
    r.text += format_line(c) + "\n";
    failed += c.passed ? 0 : 1;
  }
  r.value = {{"criteria", rows}, {"failed", failed}};
  r.exit_code = failed == 0 ? 0 : 1;
  if (!r.text.empty()) {
    r.text.pop_back();
  }
  return r;
}

int emit_error(const std::string &kind, const std::string &message, int code)
{
  std::cerr << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << std::endl;
  return code;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Quadratic dynamics, Siegel disks and prime ends: exact and numerical tools",
               "dyncomp"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);
  Settings settings;
  app.add_option("--prec", settings.prec, "Working precision in bits")
      ->envname("DYNCOMP_PREC")
      ->check(CLI::Range(16, 1 << 20));
  app.add_option("--out", settings.out, "Directory for artifacts and the run manifest");
  app.add_flag("--json", settings.json_output, "Print the result as JSON");

  json params;
  std::function<Result()> action;

  // angle
  auto *angle = app.add_subcommand("angle", "Exact doubling-map arithmetic on an angle");
  std::string angle_value;
  unsigned long doublings = 1;
  angle->add_option("--value", angle_value, "Angle as p/q or decimal")->required();
  angle->add_option("--doublings", doublings, "Number of doublings to list");
  angle->callback([&] {
    params = {{"value", angle_value}, {"doublings", doublings}};
    action = [&] { return run_angle(angle_value, doublings); };
  });

  // orbit
  auto *orbit = app.add_subcommand("orbit", "Doubling cycle with rotation number p/q");
  std::string orbit_pq;
  orbit->add_option("--pq", orbit_pq, "Rotation number p/q")->required();
  orbit->callback([&] {
    params = {{"pq", orbit_pq}};
    action = [&] { return run_orbit(orbit_pq); };
  });

  // landing-pair
  auto *landing = app.add_subcommand(
      "landing-pair", "Landing pair of p/q, or external angle of an irrational internal angle");
  std::string landing_pq;
  std::string landing_cf;
  int landing_exponent = 24;
  auto *pq_opt = landing->add_option("--pq", landing_pq, "Rotation number p/q");
  auto *cf_opt = landing->add_option("--cf", landing_cf, "Continued fraction, e.g. 1:rep=1");
  landing->add_option("--exponent", landing_exponent, "Accuracy 2^-n for irrational angles");
  pq_opt->excludes(cf_opt);
  landing->callback([&] {
    params = {{"pq", landing_pq}, {"cf", landing_cf}, {"exponent", landing_exponent}};
    action = [&] { return run_landing_pair(landing_pq, landing_cf, landing_exponent); };
  });

  // cantor
  auto *cantor = app.add_subcommand("cantor", "Nested cover of the Cantor set C_theta");
  std::string cantor_cf;
  int cantor_depth = 6;
  std::size_t cantor_check = 0;
  cantor->add_option("--cf", cantor_cf, "Continued fraction of theta")->required();
  cantor->add_option("--depth", cantor_depth, "Cover depth");
  cantor->add_option("--check", cantor_check, "Run the order test on this many orbit points");
  cantor->callback([&] {
    params = {{"cf", cantor_cf}, {"depth", cantor_depth}, {"check", cantor_check}};
    action = [&] { return run_cantor(cantor_cf, cantor_depth, settings.prec, cantor_check); };
  });

  // brjuno
  auto *brjuno = app.add_subcommand("brjuno", "Partial sums of the Brjuno series");
  std::string brjuno_cf;
  std::size_t brjuno_terms = 50;
  brjuno->add_option("--cf", brjuno_cf, "Continued fraction of theta")->required();
  brjuno->add_option("--terms", brjuno_terms, "Number of terms");
  brjuno->callback([&] {
    params = {{"cf", brjuno_cf}, {"terms", brjuno_terms}};
    action = [&] { return run_brjuno(brjuno_cf, brjuno_terms, settings.prec); };
  });

  // cf
  auto *cf = app.add_subcommand("cf", "Continued-fraction expansion and convergents");
  std::string cf_value_text;
  std::string cf_text;
  std::size_t cf_count = 10;
  auto *value_opt = cf->add_option("--value", cf_value_text, "Rational to expand");
  auto *text_opt = cf->add_option("--cf", cf_text, "Expansion to evaluate");
  value_opt->excludes(text_opt);
  cf->require_option(1, 2);
  cf->add_option("--convergents", cf_count, "Number of convergents");
  cf->callback([&] {
    params = {{"value", cf_value_text}, {"cf", cf_text}, {"convergents", cf_count}};
    action = [&] { return run_cf(cf_value_text, cf_text, cf_count, settings.prec); };
  });

  // radius
  auto *radius = app.add_subcommand("radius", "Siegel disk radius estimates");
  std::string radius_cf;
  std::size_t radius_order = 256;
  std::size_t radius_samples = 0;
  radius->add_option("--cf", radius_cf, "Continued fraction of theta")->required();
  radius->add_option("--order", radius_order, "Series order N");
  radius->add_option("--probe", radius_samples, "Samples for the inner-radius probe (0 = skip)");
  radius->callback([&] {
    params = {{"cf", radius_cf}, {"order", radius_order}, {"probe", radius_samples}};
    action = [&] { return run_radius(radius_cf, radius_order, settings.prec, radius_samples); };
  });

  // ratio-experiment
  auto *ratio = app.add_subcommand("ratio-experiment", "r(theta(A, n)) A against r(theta)");
  std::string ratio_prefix = "1";
  std::string ratio_A = "2";
  std::size_t ratio_first = 3;
  std::size_t ratio_last = 6;
  std::size_t ratio_order = 256;
  ratio->add_option("--prefix", ratio_prefix, "Quotients before the tail of ones, comma separated");
  ratio->add_option("--A", ratio_A, "Perturbation base A > 1");
  ratio->add_option("--n-first", ratio_first, "Smallest n");
  ratio->add_option("--n-last", ratio_last, "Largest n");
  ratio->add_option("--order", ratio_order, "Series order N");
  ratio->callback([&] {
    params = {{"prefix", ratio_prefix}, {"A", ratio_A},          {"n_first", ratio_first},
              {"n_last", ratio_last},   {"order", ratio_order}};
    action = [&] {
      return run_ratio(ratio_prefix, ratio_A, ratio_first, ratio_last, ratio_order, settings.prec);
    };
  });

  // julia
  auto *julia = app.add_subcommand("julia", "Pixel classification of the Julia set");
  std::string julia_c;
  int julia_res = 8;
  RenderOptions render;
  julia->add_option("--c", julia_c, "Parameter c as re,im")->required();
  julia->add_option("--res", julia_res, "Resolution exponent n, cells of side 2^-n")
      ->check(CLI::Range(0, kMaxResolutionExponent));
  julia->add_option("--max-iter", render.max_iter, "Iteration cap");
  julia->add_option("--safety", render.safety_factor, "Distance-estimate safety factor");
  julia->add_option("--threads", render.threads, "Worker threads (0 = hardware)");
  julia->callback([&] {
    params = {{"c", julia_c},
              {"res", julia_res},
              {"max_iter", render.max_iter},
              {"safety", render.safety_factor}};
    action = [&] { return run_julia(julia_c, julia_res, render); };
  });

  // ray
  auto *ray = app.add_subcommand("ray", "Trace an external ray");
  std::string ray_c;
  std::string ray_angle;
  double ray_tmin = 1e-6;
  int ray_steps = 8;
  ray->add_option("--c", ray_c, "Parameter c as re,im")->required();
  ray->add_option("--angle", ray_angle, "External angle as p/q or decimal")->required();
  ray->add_option("--tmin", ray_tmin, "Final potential");
  ray->add_option("--steps", ray_steps, "Correction steps per halving of the potential");
  ray->callback([&] {
    params = {{"c", ray_c}, {"angle", ray_angle}, {"tmin", ray_tmin}, {"steps", ray_steps}};
    action = [&] { return run_ray(ray_c, ray_angle, ray_tmin, ray_steps); };
  });

  // omega
  auto *omega = app.add_subcommand("omega", "The slit-rectangle domain and its crosscuts");
  std::string omega_a = "builtin:toy";
  std::string omega_b = "builtin:toy";
  long omega_depth = 6;
  std::size_t omega_pixels = 256;
  omega->add_option("--a-seq", omega_a, "Increasing sequence a_k, e.g. 1/4-4^-k");
  omega->add_option("--b-seq", omega_b, "Decreasing sequence b_k, e.g. 1/3+4^-k");
  omega->add_option("--depth", omega_depth, "Truncation depth");
  omega->add_option("--pixels", omega_pixels, "Image side in pixels")->check(CLI::Range(1, 4096));
  omega->callback([&] {
    params = {{"a_seq", omega_a}, {"b_seq", omega_b}, {"depth", omega_depth},
              {"pixels", omega_pixels}};
    action = [&] { return run_omega(omega_a, omega_b, omega_depth, omega_pixels); };
  });

  // lavrentiev
  auto *lav = app.add_subcommand("lavrentiev", "Crosscut estimate on the slit model domain");
  double lav_a = 1;
  double lav_b = 1.0001;
  bool lav_lower = false;
  std::size_t lav_random = 0;
  std::uint64_t lav_seed = 20240601;
  std::size_t lav_samples = 512;
  lav->add_option("--a", lav_a, "First endpoint on a slit");
  lav->add_option("--b", lav_b, "Second endpoint on the same slit");
  lav->add_flag("--lower", lav_lower, "Crosscut in the lower half-plane");
  lav->add_option("--random", lav_random, "Run this many random crosscuts instead");
  lav->add_option("--seed", lav_seed, "Seed for --random");
  lav->add_option("--samples", lav_samples, "Boundary samples per piece");
  lav->callback([&] {
    params = {{"a", lav_a},           {"b", lav_b},       {"lower", lav_lower},
              {"random", lav_random}, {"seed", lav_seed}, {"samples", lav_samples}};
    action = [&] {
      return run_lavrentiev(lav_a, lav_b, lav_lower, lav_random, lav_seed, lav_samples);
    };
  });

  // accept
  auto *accept = app.add_subcommand("accept", "Run the acceptance suite");
  std::vector<int> accept_only;
  accept->add_option("--only", accept_only, "Criterion numbers to run")
      ->check(CLI::Range(1, kCriterionCount));
  accept->callback([&] {
    params = {{"only", accept_only}};
    action = [&] { return run_accept(accept_only); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return emit_error("usage", e.what(), 2);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Result result = action();
    params["prec"] = settings.prec;
    RunManifest manifest(command, params, settings.prec);
    for (const auto &[name, bytes] : result.files) {
      manifest.write_artifact(settings.out, name, bytes);
    }
    manifest.write_artifact(settings.out, command + ".json", result.value.dump(2) + "\n");
    manifest.write(settings.out);
    if (settings.json_output) {
      std::cout << result.value.dump() << std::endl;
    } else {
      std::cout << result.text << std::endl;
    }
    return result.exit_code;
  } catch (const PrecisionExhausted &e) {
    return emit_error("precision_exhausted", e.what(), 3);
  } catch (const InvariantViolation &e) {
    return emit_error("invariant_violation", e.what(), 4);
  } catch (const std::invalid_argument &e) {
    return emit_error("invalid_argument", e.what(), 2);
  } catch (const std::out_of_range &e) {
    return emit_error("invalid_argument", e.what(), 2);
  } catch (const std::exception &e) {
    return emit_error("error", e.what(), 1);
  }
}
