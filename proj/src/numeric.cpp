#include "dyncomp/numeric.hpp"

#include <cctype>

namespace dyncomp {

namespace {

unsigned bits_to_digits10(int bits)
{
  // Round up so the MPFR mantissa is at least `bits` wide.
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

} // namespace

WorkingPrecision::WorkingPrecision(int bits) : saved_digits10_(Real::default_precision())
{
  if (bits < 16) {
    throw std::invalid_argument("working precision must be at least 16 bits");
  }
  Real::default_precision(bits_to_digits10(bits));
}

WorkingPrecision::~WorkingPrecision() { Real::default_precision(saved_digits10_); }

int WorkingPrecision::current_bits()
{
  return static_cast<int>(
      boost::multiprecision::detail::digits10_2_2(Real::default_precision()));
}

Real to_real(const Rational &q)
{
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real to_real(const Integer &z)
{
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real pi()
{
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Integer floor(const Rational &q)
{
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Integer ceil(const Rational &q)
{
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

Rational frac(const Rational &q) { return q - Rational(floor(q)); }

Rational pow2(long e)
{
  Integer p = 1;
  if (e >= 0) {
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return Rational(p);
  }
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return Rational(Integer(1), p);
}

Rational parse_rational(std::string_view text)
{
  std::string s(text);
  auto fail = [&]() -> Rational { throw std::invalid_argument("not a rational number: '" + s + "'"); };
  if (s.empty()) {
    return fail();
  }
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0) {
      return fail();
    }
    if (den == 0) {
      throw std::invalid_argument("zero denominator in '" + s + "'");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  // Decimal: [sign] digits [. digits] [e|E [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      any_digit = true;
      if (seen_point) {
        --scale;
      }
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) {
    return fail();
  }
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') {
      return fail();
    }
    std::string exponent = s.substr(i + 1);
    if (exponent.empty()) {
      return fail();
    }
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exponent, &used);
    } catch (const std::exception &) {
      return fail();
    }
    if (used != exponent.size()) {
      return fail();
    }
    scale += e;
  }
  Integer mantissa(digits, 10);
  Integer ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational q = scale < 0 ? Rational(mantissa, ten_pow) : Rational(mantissa * ten_pow);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational &q)
{
  if (q.get_den() == 1) {
    return q.get_num().get_str();
  }
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(Membership m)
{
  switch (m) {
  case Membership::inside:
    return "inside";
  case Membership::outside:
    return "outside";
  case Membership::undecided:
    return "undecided";
  }
  return "undecided";
}

} // namespace dyncomp
