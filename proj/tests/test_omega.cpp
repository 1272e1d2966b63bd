#include "doctest.h"

#include "dyncomp/omega.hpp"

#include <algorithm>
#include <chrono>

using namespace dyncomp;

namespace {

OmegaDomain toy()
{
  return {MonotoneRationalSequence::parse(Direction::increasing, "builtin:toy"),
          MonotoneRationalSequence::parse(Direction::decreasing, "builtin:toy")};
}

// a_n = 1/4 and b_n = 2/5 for every n.
OmegaDomain constant_domain()
{
  return {MonotoneRationalSequence(Direction::increasing, [](long) { return Rational(1, 4); }),
          MonotoneRationalSequence(Direction::decreasing, [](long) { return Rational(2, 5); })};
}

RPoint pt(long xn, long xd, long yn, long yd) { return {Rational(xn, xd), Rational(yn, yd)}; }

// Closed vertex cycle up to starting point and orientation.
bool same_cycle(Polyline a, Polyline b)
{
  if (a.size() != b.size() || a.empty() || a.front() != a.back() || b.front() != b.back()) {
    return false;
  }
  a.pop_back();
  b.pop_back();
  auto canonical = [](Polyline v) {
    std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
    return v;
  };
  Polyline ca = canonical(a);
  if (ca == canonical(b)) {
    return true;
  }
  std::reverse(b.begin(), b.end());
  return ca == canonical(b);
}

} // namespace

TEST_CASE("sequence expressions")
{
  auto a = MonotoneRationalSequence::parse(Direction::increasing, "1/4-4^-k");
  CHECK(a(1) == 0);
  CHECK(a(2) == Rational(3, 16));
  CHECK(a(3) == Rational(15, 64));
  auto b = MonotoneRationalSequence::parse(Direction::decreasing, "1/3 + 4^-k");
  CHECK(b(1) == Rational(7, 12));
  auto c = MonotoneRationalSequence::parse(Direction::increasing, "(k-1)/(2*k) - 3^(-k)*0");
  CHECK(c(1) == 0);
  CHECK(c(3) == Rational(1, 3));
  auto neg = MonotoneRationalSequence::parse(Direction::decreasing, "-(-1)/k");
  CHECK(neg(4) == Rational(1, 4));
  for (const char *bad : {"", "1/", "k^(1/2)", "(k", "2 x", "1/(k-1)"}) {
    CHECK_THROWS_AS(MonotoneRationalSequence::parse(Direction::increasing, bad)(1),
                    std::invalid_argument);
  }
}

TEST_CASE("monotonicity and limit brackets are enforced")
{
  MonotoneRationalSequence wrong(Direction::increasing, [](long k) { return Rational(1, k); });
  CHECK(wrong(1) == 1);
  CHECK_THROWS_AS(wrong(2), InvariantViolation);
  MonotoneRationalSequence bracketed(
      Direction::increasing, [](long k) { return Rational(k - 1, k); }, "1-1/k",
      std::pair{Rational(1, 2), Rational(1, 2)});
  CHECK(bracketed(2) == Rational(1, 2));
  CHECK_THROWS_AS(bracketed(3), InvariantViolation);
  auto toy_b = MonotoneRationalSequence::parse(Direction::decreasing, "builtin:toy");
  for (long k = 1; k <= 30; ++k) {
    CHECK(toy_b(k) > Rational(1, 3));
  }
  CHECK_THROWS_AS(OmegaDomain(toy_b, toy_b), std::invalid_argument);
}

TEST_CASE("domain invariant")
{
  OmegaDomain bad(MonotoneRationalSequence(Direction::increasing, [](long) { return Rational(1, 2); }),
                  MonotoneRationalSequence(Direction::decreasing, [](long) { return Rational(1, 2); }));
  CHECK_THROWS_AS(rectangles(bad, 1), InvariantViolation);
  auto dom = toy();
  CHECK(dom.a(1) == 0);
  CHECK(dom.b(1) == Rational(7, 12));
}

TEST_CASE("rectangles at depth 1")
{
  auto r = rectangles(constant_domain(), 1);
  CHECK(r.S == Rect{Rational(-2, 5), Rational(2, 5), Rational(1, 3), Rational(1)});
  CHECK(r.L == Rect{Rational(-2, 5), Rational(1, 4), Rational(8, 9), Rational(1)});
  CHECK(r.R == Rect{Rational(-1, 4), Rational(2, 5), Rational(5, 9), Rational(2, 3)});
  auto dom = toy();
  for (long n = 1; n <= 8; ++n) {
    auto q = rectangles(dom, n);
    CHECK(q.L.height() == pow3(-n - 1));
    CHECK(q.R.height() == pow3(-n - 1));
    CHECK(q.S.height() == 2 * pow3(-n));
    CHECK(q.S.x1 - q.L.x1 == dom.b(n) - dom.a(n));
    for (const Rect *sub : {&q.L, &q.R}) {
      CHECK(sub->x0 >= q.S.x0);
      CHECK(sub->x1 <= q.S.x1);
      CHECK(sub->y0 >= q.S.y0);
      CHECK(sub->y1 <= q.S.y1);
    }
  }
}

TEST_CASE("Gamma_1 vertex list")
{
  auto lines = build_gamma_n(constant_domain(), 1);
  REQUIRE(lines.size() == 1);
  Polyline expected{pt(-1, 1, -1, 1), pt(1, 1, -1, 1), pt(1, 1, 1, 1),   pt(2, 5, 1, 1),
                    pt(2, 5, 2, 3),   pt(-1, 4, 2, 3), pt(-1, 4, 5, 9),  pt(2, 5, 5, 9),
                    pt(2, 5, 1, 3),   pt(-2, 5, 1, 3), pt(-2, 5, 8, 9),  pt(1, 4, 8, 9),
                    pt(1, 4, 1, 1),   pt(-1, 1, 1, 1), pt(-1, 1, -1, 1)};
  CHECK(same_cycle(lines[0], expected));
}

TEST_CASE("Gamma_n below 3^-n is the closing segment")
{
  auto dom = toy();
  for (long n = 1; n <= 5; ++n) {
    const Rational floor = pow3(-n);
    std::size_t closing = 0;
    for (const auto &line : build_gamma_n(dom, n)) {
      for (std::size_t i = 1; i < line.size(); ++i) {
        const RPoint &p = line[i - 1];
        const RPoint &q = line[i];
        if (p.y > floor || q.y > floor || p.y <= 0 || q.y <= 0) {
          continue;
        }
        CHECK(p.y == floor);
        CHECK(q.y == floor);
        CHECK(std::min(p.x, q.x) == -dom.b(n));
        CHECK(std::max(p.x, q.x) == dom.b(n));
        ++closing;
      }
    }
    CHECK(closing == 1);
  }
}

TEST_CASE("Gamma_n Hausdorff Cauchy rate")
{
  auto start = std::chrono::steady_clock::now();
  auto dom = toy();
  for (long n = 2; n <= 4; ++n) {
    CHECK(gamma_hausdorff(dom, n, n + 2, 1.0 / 1024) <= 2 * pow3(-n).get_d());
  }
  CHECK(gamma_hausdorff(dom, 3, 5, 1.0 / 1024) <= 2 * pow3(-3).get_d());
  CHECK(gamma_hausdorff(dom, 3, 3, 1.0 / 1024) == 0);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(30));
}

TEST_CASE("membership")
{
  auto dom = toy();
  CHECK(in_domain(dom, 1, pt(2, 1, 0, 1)) == Membership::inside);
  for (long n = 1; n <= 6; ++n) {
    for (long N = n; N <= n + 2; ++N) {
      CHECK(in_domain(dom, N, marked_point(n)) == Membership::inside);
    }
    CHECK(in_domain(dom, n, {0, pow3(-n)}) == Membership::undecided);
    CHECK(in_domain(dom, n, {dom.b(n), pow3(-n - 1)}) == Membership::outside);
  }
  // Inside L_1 and inside R_1.
  CHECK(in_domain(dom, 3, pt(-1, 4, 17, 18)) == Membership::outside);
  CHECK(in_domain(dom, 3, pt(1, 4, 11, 18)) == Membership::outside);
  CHECK(in_domain(dom, 3, pt(0, 1, -1, 2)) == Membership::outside);
  // The top opening of S_1 lies on the square's edge.
  CHECK(in_domain(dom, 1, pt(1, 2, 1, 1)) == Membership::inside);
  CHECK(in_domain(dom, 1, pt(1, 1, 1, 2)) == Membership::outside);
}

TEST_CASE("fundamental chain of crosscuts")
{
  auto dom = toy();
  auto first = crosscut_chain(1);
  CHECK(first.low == pt(0, 1, 2, 3));
  CHECK(first.high == pt(0, 1, 8, 9));
  for (long n = 1; n <= 8; ++n) {
    auto g = crosscut_chain(n);
    CHECK(g.diameter() == 2 * pow3(-n - 1));
    CHECK(crosscut_chain(n + 1).diameter() < g.diameter());
    CHECK(crosscut_chain(n + 1).high.y < g.low.y);
    CHECK(g.contains(marked_point(n)));
    auto inc = crosscut_incidence(dom, n);
    CHECK(inc.low_on_R_top);
    CHECK(inc.high_on_L_bottom);
    CHECK(inc.interior_in_domain);
  }
  for (long n = 1; n <= 5; ++n) {
    CHECK(crosscut_nested(dom, n));
    CHECK(crosscut_nested(constant_domain(), n));
  }
}

TEST_CASE("impression sandwich")
{
  auto dom = toy();
  auto first = impression_segments(dom, 1);
  CHECK(first.inner_half_width == 0);
  for (long k = 1; k <= 8; ++k) {
    auto now = impression_segments(dom, k);
    auto next = impression_segments(dom, k + 1);
    CHECK(now.inner_half_width <= next.inner_half_width);
    CHECK(next.outer_half_width <= now.outer_half_width);
    CHECK(next.inner_half_width < Rational(1, 4));
    CHECK(next.outer_half_width > Rational(1, 3));
    CHECK(now.inner_half_width < now.outer_half_width);
  }
  auto deep = impression_segments(dom, 30);
  CHECK(Rational(1, 4) - deep.inner_half_width < Rational(1, 1000000));
  CHECK(deep.outer_half_width - Rational(1, 3) < Rational(1, 1000000));
}
