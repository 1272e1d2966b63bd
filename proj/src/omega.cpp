#include "dyncomp/omega.hpp"

#include "dyncomp/hausdorff.hpp"

#include <cctype>
#include <deque>
#include <stdexcept>

namespace dyncomp {

namespace {

using Term = MonotoneRationalSequence::Term;

constexpr long kMaxExponent = 1L << 16;

Rational power(const Rational &base, const Rational &exponent)
{
  if (exponent.get_den() != 1) {
    throw std::invalid_argument("sequence expression: exponent must be an integer");
  }
  const Integer &e = exponent.get_num();
  if (abs(e) > kMaxExponent) {
    throw std::invalid_argument("sequence expression: exponent too large");
  }
  const long n = e.get_si();
  if (base == 0 && n < 0) {
    throw std::invalid_argument("sequence expression: zero to a negative power");
  }
  const unsigned long m = static_cast<unsigned long>(n < 0 ? -n : n);
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), m);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), m);
  Rational r = n < 0 ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

// expr := term (('+' | '-') term)*
// term := unary (('*' | '/') unary)*
// unary := '-' unary | pow
// pow := atom ('^' unary)?
// atom := integer | 'k' | '(' expr ')'
class ExpressionParser {
public:
  explicit ExpressionParser(const std::string &text) : text_(text) {}

  Term parse()
  {
    Term t = expr();
    skip();
    if (pos_ != text_.size()) {
      fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    return t;
  }

private:
  [[noreturn]] void fail(const std::string &what) const
  {
    throw std::invalid_argument("sequence expression \"" + text_ + "\": " + what);
  }
  void skip()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }
  bool accept(char c)
  {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  Term expr()
  {
    Term lhs = term();
    for (;;) {
      if (accept('+')) {
        Term rhs = term();
        lhs = [lhs, rhs](long k) { return Rational(lhs(k) + rhs(k)); };
      } else if (accept('-')) {
        Term rhs = term();
        lhs = [lhs, rhs](long k) { return Rational(lhs(k) - rhs(k)); };
      } else {
        return lhs;
      }
    }
  }
  Term term()
  {
    Term lhs = unary();
    for (;;) {
      if (accept('*')) {
        Term rhs = unary();
        lhs = [lhs, rhs](long k) { return Rational(lhs(k) * rhs(k)); };
      } else if (accept('/')) {
        Term rhs = unary();
        lhs = [lhs, rhs](long k) {
          Rational d = rhs(k);
          if (d == 0) {
            throw std::invalid_argument("sequence expression: division by zero");
          }
          return Rational(lhs(k) / d);
        };
      } else {
        return lhs;
      }
    }
  }
  Term unary()
  {
    if (accept('-')) {
      Term inner = unary();
      return [inner](long k) { return Rational(-inner(k)); };
    }
    Term base = atom();
    if (accept('^')) {
      Term exponent = unary();
      return [base, exponent](long k) { return power(base(k), exponent(k)); };
    }
    return base;
  }
  Term atom()
  {
    skip();
    if (pos_ >= text_.size()) {
      fail("unexpected end");
    }
    if (accept('(')) {
      Term inner = expr();
      if (!accept(')')) {
        fail("missing ')'");
      }
      return inner;
    }
    if (accept('k')) {
      return [](long k) { return Rational(k); };
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) {
      fail("expected a number, 'k' or '('");
    }
    Rational value(Integer(text_.substr(start, pos_ - start)));
    return [value](long) { return value; };
  }

  std::string text_;
  std::size_t pos_ = 0;
};

Rational abs_q(const Rational &q) { return q < 0 ? Rational(-q) : q; }

} // namespace

MonotoneRationalSequence::MonotoneRationalSequence(
    Direction direction, Term term, std::string description,
    std::optional<std::pair<Rational, Rational>> limit_bracket)
    : direction_(direction), term_(std::move(term)), description_(std::move(description)),
      bracket_(std::move(limit_bracket)), cache_(std::make_shared<std::vector<Rational>>())
{
  if (bracket_ && bracket_->first > bracket_->second) {
    throw std::invalid_argument("MonotoneRationalSequence: empty limit bracket");
  }
}

MonotoneRationalSequence MonotoneRationalSequence::parse(Direction direction,
                                                         const std::string &text)
{
  if (text == "builtin:toy") {
    if (direction == Direction::increasing) {
      return {direction, ExpressionParser("1/4-4^-k").parse(), "1/4-4^-k",
              std::pair{Rational(1, 4), Rational(1, 4)}};
    }
    return {direction, ExpressionParser("1/3+4^-k").parse(), "1/3+4^-k",
            std::pair{Rational(1, 3), Rational(1, 3)}};
  }
  return {direction, ExpressionParser(text).parse(), text};
}

Rational MonotoneRationalSequence::operator()(long k) const
{
  if (k < 1) {
    throw std::invalid_argument("MonotoneRationalSequence: index must be at least 1");
  }
  auto &cache = *cache_;
  while (static_cast<long>(cache.size()) < k) {
    const long j = static_cast<long>(cache.size()) + 1;
    Rational t = term_(j);
    if (!cache.empty()) {
      const Rational &prev = cache.back();
      if (direction_ == Direction::increasing ? t < prev : t > prev) {
        throw InvariantViolation("sequence " + description_ + " is not monotone at k = " +
                                 std::to_string(j));
      }
    }
    if (bracket_ && (direction_ == Direction::increasing ? t > bracket_->second
                                                          : t < bracket_->first)) {
      throw InvariantViolation("sequence " + description_ + " crosses its limit bracket at k = " +
                               std::to_string(j));
    }
    cache.push_back(std::move(t));
  }
  return cache[static_cast<std::size_t>(k - 1)];
}

OmegaDomain::OmegaDomain(MonotoneRationalSequence a, MonotoneRationalSequence b)
    : a_(std::move(a)), b_(std::move(b))
{
  if (a_.direction() != Direction::increasing || b_.direction() != Direction::decreasing) {
    throw std::invalid_argument("OmegaDomain: a must increase and b must decrease");
  }
}

void OmegaDomain::check(long n) const
{
  const Rational an = a_(n);
  const Rational bn = b_(n);
  if (!(0 <= an && an < bn && bn < 1)) {
    throw InvariantViolation("OmegaDomain: need 0 <= a_n < b_n < 1 at n = " + std::to_string(n) +
                             " (a_n = " + to_string(an) + ", b_n = " + to_string(bn) + ")");
  }
}

Rational OmegaDomain::a(long n) const
{
  check(n);
  return a_(n);
}

Rational OmegaDomain::b(long n) const
{
  check(n);
  return b_(n);
}

Rational pow3(long e)
{
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 3, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

OmegaRectangles rectangles(const OmegaDomain &dom, long n)
{
  if (n < 1) {
    throw std::invalid_argument("rectangles: n must be at least 1");
  }
  const Rational a = dom.a(n);
  const Rational b = dom.b(n);
  const Rational unit = pow3(-n - 1);
  return {{-b, b, 3 * unit, 9 * unit}, {-b, a, 8 * unit, 9 * unit}, {-a, b, 5 * unit, 6 * unit}};
}

bool in_truncation(const OmegaDomain &dom, long n, const RPoint &p)
{
  if (abs_q(p.x) > 1 || abs_q(p.y) > 1) {
    return true;
  }
  if (p.y <= pow3(-n)) {
    return false;
  }
  long k = 1;
  while (p.y <= pow3(-k)) {
    ++k;
  }
  const auto r = rectangles(dom, k);
  return abs_q(p.x) < r.S.x1 && !r.L.contains(p) && !r.R.contains(p);
}

Membership in_domain(const OmegaDomain &dom, long N, const RPoint &p)
{
  if (N < 1) {
    throw std::invalid_argument("in_domain: depth must be at least 1");
  }
  if (abs_q(p.x) > 1 || abs_q(p.y) > 1) {
    return Membership::inside;
  }
  if (p.y <= 0) {
    return Membership::outside;
  }
  if (p.y <= pow3(-N)) {
    return abs_q(p.x) < dom.b(N) ? Membership::undecided : Membership::outside;
  }
  return in_truncation(dom, N, p) ? Membership::inside : Membership::outside;
}

namespace {

std::pair<std::vector<Rational>, std::vector<Rational>> truncation_grid(const OmegaDomain &dom,
                                                                        long n)
{
  std::vector<Rational> xs{-2, -1, 0, 1, 2};
  std::vector<Rational> ys{-2, -1, 0, 1, 2};
  for (long k = 1; k <= n; ++k) {
    const Rational a = dom.a(k);
    const Rational b = dom.b(k);
    xs.insert(xs.end(), {a, Rational(-a), b, Rational(-b)});
    const Rational unit = pow3(-k - 1);
    ys.insert(ys.end(), {Rational(3 * unit), Rational(9 * unit), Rational(8 * unit),
                         Rational(5 * unit), Rational(6 * unit)});
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  return {xs, ys};
}

} // namespace

std::vector<Polyline> build_gamma_n(const OmegaDomain &dom, long n)
{
  if (n < 1) {
    throw std::invalid_argument("build_gamma_n: n must be at least 1");
  }
  auto [xs, ys] = truncation_grid(dom, n);
  auto segments =
      grid_boundary(xs, ys, [&](const RPoint &p) { return in_truncation(dom, n, p); }, true);
  return chain_segments(segments);
}

Crosscut crosscut_chain(long n)
{
  if (n < 1) {
    throw std::invalid_argument("crosscut_chain: n must be at least 1");
  }
  return {{0, Rational(2 * pow3(-n))}, {0, Rational(8 * pow3(-n - 1))}};
}

RPoint marked_point(long n)
{
  if (n < 1) {
    throw std::invalid_argument("marked_point: n must be at least 1");
  }
  return {0, Rational(7 * pow3(-n - 1))};
}

CrosscutIncidence crosscut_incidence(const OmegaDomain &dom, long n)
{
  const Crosscut g = crosscut_chain(n);
  const auto r = rectangles(dom, n);
  CrosscutIncidence out;
  out.low_on_R_top = g.low.y == r.R.y1 && r.R.x0 <= g.low.x && g.low.x <= r.R.x1;
  out.high_on_L_bottom = g.high.y == r.L.y0 && r.L.x0 <= g.high.x && g.high.x <= r.L.x1;
  // The open segment lies in one stratum, between R_n and L_n.
  out.interior_in_domain = in_truncation(dom, n, {0, Rational((g.low.y + g.high.y) / 2)}) &&
                           g.low.y > r.S.y0 && g.high.y <= r.S.y1;
  return out;
}

bool crosscut_nested(const OmegaDomain &dom, long n)
{
  const long depth = n + 2;
  auto [xs, ys] = truncation_grid(dom, depth);
  const long nx = static_cast<long>(xs.size()) - 1;
  const long ny = static_cast<long>(ys.size()) - 1;
  auto mid = [](const Rational &a, const Rational &b) { return Rational((a + b) / 2); };
  auto in = [&](const RPoint &p) { return in_truncation(dom, depth, p); };
  const Crosscut cut = crosscut_chain(n);
  const Crosscut inner = crosscut_chain(n + 1);

  std::vector<char> cell_in(static_cast<std::size_t>(nx * ny));
  for (long j = 0; j < ny; ++j) {
    for (long i = 0; i < nx; ++i) {
      cell_in[static_cast<std::size_t>(j * nx + i)] =
          in({mid(xs[i], xs[i + 1]), mid(ys[j], ys[j + 1])});
    }
  }
  auto index = [&](long i, long j) { return static_cast<std::size_t>(j * nx + i); };
  std::vector<char> reached(cell_in.size(), 0);
  std::deque<std::pair<long, long>> queue;
  // Base point (2, 0) lies in the rightmost column, outside Q.
  const long base_row =
      static_cast<long>(std::lower_bound(ys.begin(), ys.end(), Rational(0)) - ys.begin());
  queue.emplace_back(nx - 1, base_row);
  reached[index(nx - 1, base_row)] = 1;
  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    auto visit = [&](long ni, long nj, const RPoint &edge_mid, bool blocked) {
      if (ni < 0 || nj < 0 || ni >= nx || nj >= ny || blocked) {
        return;
      }
      if (reached[index(ni, nj)] || !cell_in[index(ni, nj)] || !in(edge_mid)) {
        return;
      }
      reached[index(ni, nj)] = 1;
      queue.emplace_back(ni, nj);
    };
    auto cut_blocks = [&](long edge_i) {
      return xs[edge_i] == 0 && ys[j] >= cut.low.y && ys[j + 1] <= cut.high.y;
    };
    const Rational my = mid(ys[j], ys[j + 1]);
    const Rational mx = mid(xs[i], xs[i + 1]);
    visit(i - 1, j, {xs[i], my}, cut_blocks(i));
    visit(i + 1, j, {xs[i + 1], my}, cut_blocks(i + 1));
    visit(i, j - 1, {mx, ys[j]}, false);
    visit(i, j + 1, {mx, ys[j + 1]}, false);
  }

  const long axis = static_cast<long>(std::lower_bound(xs.begin(), xs.end(), Rational(0)) -
                                      xs.begin());
  bool found = false;
  for (long j = 0; j < ny; ++j) {
    if (ys[j] < inner.low.y || ys[j + 1] > inner.high.y) {
      continue;
    }
    for (long i : {axis - 1, axis}) {
      if (!cell_in[index(i, j)] || reached[index(i, j)]) {
        return false;
      }
      found = true;
    }
  }
  return found;
}

ImpressionSegments impression_segments(const OmegaDomain &dom, long k)
{
  if (k < 1) {
    throw std::invalid_argument("impression_segments: k must be at least 1");
  }
  return {dom.a(k), dom.b(k)};
}

double gamma_hausdorff(const OmegaDomain &dom, long n, long m, double spacing)
{
  auto a = to_point_set(sample_polylines(build_gamma_n(dom, n), spacing));
  auto b = to_point_set(sample_polylines(build_gamma_n(dom, m), spacing));
  return hausdorff_distance(a, b);
}

} // namespace dyncomp
