#include "dyncomp/continued_fraction.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace dyncomp {

namespace {

std::vector<Integer> parse_quotient_list(std::string_view text)
{
  std::vector<Integer> out;
  std::string s(text);
  if (s.empty()) {
    return out;
  }
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Integer v;
    if (item.empty() || v.set_str(item, 10) != 0) {
      throw std::invalid_argument("bad partial quotient '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

nlohmann::json quotient_json(const Integer &v)
{
  if (v.fits_slong_p()) {
    return v.get_si();
  }
  return v.get_str();
}

Integer quotient_from_json(const nlohmann::json &j)
{
  if (j.is_number_integer()) {
    return Integer(j.get<long>());
  }
  if (j.is_string()) {
    return Integer(j.get<std::string>(), 10);
  }
  throw std::invalid_argument("partial quotient must be an integer or a decimal string");
}

} // namespace

CFExpansion::CFExpansion(std::vector<Integer> quotients, std::vector<Integer> tail)
    : quotients_(std::move(quotients)), tail_(std::move(tail))
{
  if (quotients_.empty() && tail_.empty()) {
    throw std::invalid_argument("continued fraction needs at least one quotient");
  }
  for (const auto *list : {&quotients_, &tail_}) {
    for (const Integer &r : *list) {
      if (r < 1) {
        throw std::invalid_argument("partial quotients must be >= 1");
      }
    }
  }
  if (tail_.empty() && quotients_.size() >= 2 && quotients_.back() < 2) {
    throw std::invalid_argument("finite expansion must end with a quotient >= 2");
  }
}

CFExpansion CFExpansion::parse(std::string_view text)
{
  std::string s(text);
  if (s.rfind("cf:", 0) == 0) {
    s = s.substr(3);
  }
  std::string head = s;
  std::string rep;
  if (auto pos = s.find("rep="); pos != std::string::npos) {
    head = s.substr(0, pos);
    rep = s.substr(pos + 4);
    if (!head.empty() && head.back() == ':') {
      head.pop_back();
    }
    if (rep.empty()) {
      throw std::invalid_argument("empty repeating block in '" + std::string(text) + "'");
    }
  }
  return CFExpansion(parse_quotient_list(head), parse_quotient_list(rep));
}

CFExpansion CFExpansion::from_json(const nlohmann::json &j)
{
  std::vector<Integer> q, t;
  for (const auto &v : j.at("quotients")) {
    q.push_back(quotient_from_json(v));
  }
  if (j.contains("tail")) {
    for (const auto &v : j.at("tail")) {
      t.push_back(quotient_from_json(v));
    }
  }
  return CFExpansion(std::move(q), std::move(t));
}

nlohmann::json CFExpansion::to_json() const
{
  nlohmann::json q = nlohmann::json::array();
  nlohmann::json t = nlohmann::json::array();
  for (const auto &v : quotients_) {
    q.push_back(quotient_json(v));
  }
  for (const auto &v : tail_) {
    t.push_back(quotient_json(v));
  }
  return {{"quotients", q}, {"tail", t}};
}

std::string CFExpansion::str() const
{
  std::string out;
  for (std::size_t i = 0; i < quotients_.size(); ++i) {
    out += (i ? "," : "") + quotients_[i].get_str();
  }
  if (!tail_.empty()) {
    out += ":rep=";
    for (std::size_t i = 0; i < tail_.size(); ++i) {
      out += (i ? "," : "") + tail_[i].get_str();
    }
  }
  return out;
}

Integer CFExpansion::quotient(std::size_t k) const
{
  if (k == 0) {
    throw std::out_of_range("partial quotients are 1-based");
  }
  if (k <= quotients_.size()) {
    return quotients_[k - 1];
  }
  if (tail_.empty()) {
    throw std::out_of_range("finite continued fraction has only " +
                            std::to_string(quotients_.size()) + " quotients");
  }
  return tail_[(k - 1 - quotients_.size()) % tail_.size()];
}

std::size_t CFExpansion::available() const
{
  return tail_.empty() ? quotients_.size() : std::numeric_limits<std::size_t>::max();
}

CFExpansion CFExpansion::shifted(std::size_t k) const
{
  if (k == 0) {
    return *this;
  }
  if (k < quotients_.size()) {
    return CFExpansion({quotients_.begin() + static_cast<std::ptrdiff_t>(k), quotients_.end()},
                       tail_);
  }
  if (tail_.empty()) {
    throw std::out_of_range("cannot shift a finite expansion past its last quotient");
  }
  std::size_t offset = (k - quotients_.size()) % tail_.size();
  std::vector<Integer> rotated(tail_.begin() + static_cast<std::ptrdiff_t>(offset), tail_.end());
  rotated.insert(rotated.end(), tail_.begin(), tail_.begin() + static_cast<std::ptrdiff_t>(offset));
  return CFExpansion({}, std::move(rotated));
}

std::vector<Convergent> convergents(const CFExpansion &cf, std::size_t n)
{
  if (n > cf.available()) {
    throw std::out_of_range("requested " + std::to_string(n) + " convergents but the expansion has " +
                            std::to_string(cf.available()) + " quotients");
  }
  std::vector<Convergent> out;
  out.reserve(n);
  Integer p_prev = 1, q_prev = 0; // k = -1
  Integer p = 0, q = 1;           // k = 0
  for (std::size_t k = 1; k <= n; ++k) {
    Integer r = cf.quotient(k);
    Integer p_next = r * p + p_prev;
    Integer q_next = r * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    out.push_back({p, q});
  }
  return out;
}

CFExpansion cf_expand(const Rational &x)
{
  if (x <= 0 || x >= 1) {
    throw std::invalid_argument("cf_expand: value must lie in (0, 1), got " + to_string(x));
  }
  std::vector<Integer> quotients;
  Rational rest = x;
  while (rest != 0) {
    Rational inv = 1 / rest;
    Integer r = floor(inv);
    quotients.push_back(r);
    rest = inv - Rational(r);
  }
  return CFExpansion(std::move(quotients));
}

CertifiedExpansion cf_expand(const RealOracle &oracle, int budget_bits, std::size_t max_quotients)
{
  auto [lo, hi] = oracle(budget_bits);
  if (lo > hi) {
    throw std::invalid_argument("cf_expand: oracle returned an inverted bracket");
  }
  if (lo <= 0 || hi >= 1) {
    throw std::invalid_argument("cf_expand: value must lie in (0, 1)");
  }
  std::vector<Integer> quotients;
  std::string reason;
  while (quotients.size() < max_quotients) {
    if (lo == 0 && hi == 0) {
      // The value was an exact rational and the expansion has terminated.
      break;
    }
    if (lo <= 0) {
      reason = "bracket reaches 0 after " + std::to_string(quotients.size()) +
               " quotients; cannot certify termination or the next quotient";
      break;
    }
    // x -> 1/x - r is decreasing in x, so the bracket ends swap.
    Rational inv_hi = 1 / hi;
    Rational inv_lo = 1 / lo;
    Integer r_lo = floor(inv_hi);
    Integer r_hi = floor(inv_lo);
    if (r_lo != r_hi) {
      reason = "precision budget of " + std::to_string(budget_bits) +
               " bits certifies only " + std::to_string(quotients.size()) + " quotients";
      break;
    }
    quotients.push_back(r_lo);
    Rational next_lo = inv_hi - Rational(r_lo);
    Rational next_hi = inv_lo - Rational(r_lo);
    lo = next_lo;
    hi = next_hi;
  }
  CertifiedExpansion out;
  out.terminated = lo == 0 && hi == 0;
  out.complete = reason.empty();
  out.reason = reason;
  out.quotients = std::move(quotients);
  return out;
}

namespace {

/// Positive root of the fixed-point equation of a purely periodic block.
Real periodic_value(const std::vector<Integer> &block)
{
  Integer p_prev = 1, q_prev = 0, p = 0, q = 1;
  for (const Integer &t : block) {
    Integer p_next = t * p + p_prev;
    Integer q_next = t * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  // y = (p + p_prev y) / (q + q_prev y)  =>  q_prev y^2 + (q - p_prev) y - p = 0
  Real a = to_real(q_prev);
  Real b = to_real(Integer(q - p_prev));
  Real c = to_real(p);
  Real disc = sqrt(b * b + 4 * a * c);
  return 2 * c / (b + disc);
}

} // namespace

Real cf_value(const CFExpansion &cf)
{
  const auto &prefix = cf.quotients();
  if (cf.is_finite()) {
    Integer p_prev = 1, q_prev = 0, p = 0, q = 1;
    for (const Integer &r : prefix) {
      Integer p_next = r * p + p_prev;
      Integer q_next = r * q + q_prev;
      p_prev = p;
      q_prev = q;
      p = p_next;
      q = q_next;
    }
    return to_real(Rational(p, q));
  }
  Real x = periodic_value(cf.tail());
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) {
    x = 1 / (to_real(*it) + x);
  }
  return x;
}

std::vector<Real> gauss_orbit(const CFExpansion &cf, std::size_t n)
{
  if (n > cf.available()) {
    throw std::out_of_range("gauss_orbit: expansion has only " + std::to_string(cf.available()) +
                            " quotients");
  }
  std::vector<Real> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(cf_value(cf.shifted(k)));
  }
  return out;
}

std::vector<Real> brjuno_partial_sums(const CFExpansion &cf, std::size_t terms)
{
  std::vector<Real> thetas = gauss_orbit(cf, terms);
  std::vector<Real> sums;
  sums.reserve(terms);
  Real product = 1;
  Real sum = 0;
  for (const Real &theta : thetas) {
    sum += product * log(1 / theta);
    product *= theta;
    sums.push_back(sum);
  }
  return sums;
}

Real brjuno_sum(const CFExpansion &cf, std::size_t terms)
{
  if (terms == 0) {
    return Real(0);
  }
  return brjuno_partial_sums(cf, terms).back();
}

bool is_bounded_type(const CFExpansion &cf, const Integer &bound)
{
  for (const auto *list : {&cf.quotients(), &cf.tail()}) {
    for (const Integer &r : *list) {
      if (r > bound) {
        return false;
      }
    }
  }
  return true;
}

CFExpansion perturbed_cf(const std::vector<Integer> &prefix, const Rational &A)
{
  if (prefix.empty()) {
    throw std::invalid_argument("perturbed_cf: prefix must be nonempty");
  }
  if (A <= 1) {
    throw std::invalid_argument("perturbed_cf: A must exceed 1");
  }
  CFExpansion head(prefix, {Integer(1)});
  Integer qn = convergents(head, prefix.size()).back().q;
  if (!qn.fits_ulong_p()) {
    throw std::overflow_error("perturbed_cf: q_n too large for exponentiation");
  }
  unsigned long e = qn.get_ui();
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), A.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), A.get_den_mpz_t(), e);
  Integer An = num / den; // both positive, truncation is floor
  std::vector<Integer> quotients = prefix;
  quotients.push_back(An);
  return CFExpansion(std::move(quotients), {Integer(1)});
}

} // namespace dyncomp
