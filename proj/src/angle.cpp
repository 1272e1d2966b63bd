#include "dyncomp/angle.hpp"

#include <algorithm>
#include <stdexcept>

namespace dyncomp {

Angle::Angle(Integer num, Integer den)
{
  if (den == 0) {
    throw std::invalid_argument("angle denominator must be nonzero");
  }
  Rational q(num, den);
  q.canonicalize();
  value_ = frac(q);
}

Angle::Angle(const Rational &value) : value_(frac(value)) {}

Angle Angle::parse(std::string_view text) { return Angle(parse_rational(text)); }

std::string Angle::str() const
{
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Angle doubled(const Angle &a) { return Angle(a.value() * 2); }

Angle doubled(const Angle &a, unsigned long k)
{
  // 2^k num mod den, then reduce.
  Integer den = a.denominator();
  Integer mult;
  Integer two = 2;
  mpz_powm_ui(mult.get_mpz_t(), two.get_mpz_t(), k, den.get_mpz_t());
  Integer num = (a.numerator() * mult) % den;
  return Angle(num, den);
}

Rational circle_distance(const Rational &a, const Rational &b)
{
  Rational d = frac(a - b);
  Rational other = 1 - d;
  return d < other ? d : other;
}

Rational circle_distance(const Angle &a, const Angle &b)
{
  return circle_distance(a.value(), b.value());
}

std::pair<Angle, Angle> halve_preimages(const Angle &a)
{
  Rational half = a.value() / 2;
  return {Angle(half), Angle(half + Rational(1, 2))};
}

std::vector<Angle> cyclic_sort(std::vector<Angle> angles)
{
  std::sort(angles.begin(), angles.end());
  if (std::adjacent_find(angles.begin(), angles.end()) != angles.end()) {
    throw std::invalid_argument("cyclic_sort: duplicate angles");
  }
  return angles;
}

unsigned long doubling_period(const Angle &a)
{
  const Integer den = a.denominator();
  if (mpz_even_p(den.get_mpz_t())) {
    return 0;
  }
  if (den == 1) {
    return 1;
  }
  // Multiplicative order of 2 modulo the denominator.
  Integer x = 2 % den;
  unsigned long k = 1;
  while (x != 1) {
    x = (x * 2) % den;
    ++k;
  }
  return k;
}

} // namespace dyncomp
