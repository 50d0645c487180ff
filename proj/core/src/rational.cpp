#include "hmf/rational.hpp"

#include <limits>

namespace hmf {

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw PreconditionError("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0) throw PreconditionError("malformed rational literal: " + s);
  if (sgn(q.get_den()) == 0) throw PreconditionError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw PreconditionError("integer does not fit in 64 bits: " + z.get_str());
  return static_cast<std::int64_t>(z.get_si());
}

Integer binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

}  // namespace hmf
