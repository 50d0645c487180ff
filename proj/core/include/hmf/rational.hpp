#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hmf {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when an operation's precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a truncated object does not carry enough data for a request.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical "num/den" text form; integers are written with denominator 1.
std::string to_fraction_string(const Rational& q);

/// Accepts "num/den" or a bare integer; the result is canonicalized.
Rational parse_rational(std::string_view text);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational q(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

inline Integer to_integer(std::int64_t v) { return Integer(static_cast<long>(v)); }

/// Exact conversion; throws if the value does not fit.
std::int64_t to_int64(const Integer& z);

/// Binomial coefficient with C(n, k) = 0 outside 0 <= k <= n.
Integer binomial(std::int64_t n, std::int64_t k);

Integer ipow(const Integer& base, unsigned long exponent);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace hmf
