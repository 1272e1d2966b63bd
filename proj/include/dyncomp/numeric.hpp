#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dyncomp {

using Integer = mpz_class;
using Rational = mpq_class;

/// Variable-precision binary float. The precision of newly created values
/// follows the process-wide default, set through WorkingPrecision.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Complex = std::complex<Real>;

inline constexpr int kDefaultPrecisionBits = 128;

/// Thrown when a computation cannot certify its result at the precision it
/// was given. Callers are expected to retry with more bits.
class PrecisionExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a structural invariant of an input or an intermediate object
/// fails (non-monotone sequence, non-rotation cycle, ...).
class InvariantViolation : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// RAII scope setting the default MPFR precision in binary digits. The
/// default is process-global, so scopes must not be opened concurrently.
class WorkingPrecision {
public:
  explicit WorkingPrecision(int bits);
  ~WorkingPrecision();
  WorkingPrecision(const WorkingPrecision &) = delete;
  WorkingPrecision &operator=(const WorkingPrecision &) = delete;

  static int current_bits();

private:
  unsigned saved_digits10_;
};

Real to_real(const Rational &q);
Real to_real(const Integer &z);
Real pi();

/// Fractional part in [0, 1).
Rational frac(const Rational &q);
Integer floor(const Rational &q);
Integer ceil(const Rational &q);

/// 2^e as an exact rational, e of either sign.
Rational pow2(long e);

/// Parses "p/q", an integer, or a finite decimal such as "-0.125" or "1e-3"
/// into an exact rational.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational &q);

/// Three-valued answer of a test that may not resolve at finite depth.
enum class Membership { inside, outside, undecided };

std::string to_string(Membership m);

} // namespace dyncomp
