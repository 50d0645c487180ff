#include "hmf/charzeta.hpp"

#include <cmath>
#include <limits>

namespace hmf {

int kronecker(std::int64_t D, std::int64_t n) {
  if (n < 1) throw PreconditionError("kronecker symbol needs n >= 1");
  Integer z = to_integer(D);
  return mpz_kronecker_si(z.get_mpz_t(), static_cast<long>(n));
}

std::vector<Rational> bernoulli_table(int k) {
  if (k < 0) throw PreconditionError("bernoulli index must be non-negative");
  std::vector<Rational> B(static_cast<std::size_t>(k + 1));
  B[0] = 1;
  for (int m = 1; m <= k; ++m) {
    Rational s = 0;
    for (int j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * B[static_cast<std::size_t>(j)];
    B[static_cast<std::size_t>(m)] = -s / (m + 1);
  }
  return B;
}

Rational bernoulli(int k) {
  if (k < 2 || k % 2 != 0) throw PreconditionError("bernoulli needs even k >= 2, got " + std::to_string(k));
  return bernoulli_table(k).back();
}

Rational bernoulli_polynomial(int k, const Rational& x) {
  const auto B = bernoulli_table(k);
  Rational r = 0;
  Rational xp = 1;
  for (int j = k; j >= 0; --j) {
    r += Rational(binomial(k, j)) * B[static_cast<std::size_t>(j)] * xp;
    xp *= x;
  }
  return r;
}

Rational gen_bernoulli(int k, std::int64_t D) {
  if (k < 1) throw PreconditionError("generalized Bernoulli index must be positive");
  if (D == 1) {
    Rational b = bernoulli_table(k).back();
    return k == 1 ? -b : b;  // chi trivial uses B_1 = +1/2
  }
  const auto B = bernoulli_table(k);
  Rational sum = 0;
  for (std::int64_t a = 1; a <= D; ++a) {
    int chi = kronecker(D, a);
    if (chi == 0) continue;
    Rational x = make_rational(a, D);
    Rational poly = 0;
    Rational xp = 1;
    for (int j = k; j >= 0; --j) {
      poly += Rational(binomial(k, j)) * B[static_cast<std::size_t>(j)] * xp;
      xp *= x;
    }
    if (chi > 0) sum += poly;
    else sum -= poly;
  }
  return sum * Rational(ipow(to_integer(D), static_cast<unsigned long>(k - 1)));
}

Rational zeta_special(const FieldDesc& field, int k) {
  if (k < 2 || k % 2 != 0) throw PreconditionError("zeta_F(1-k) needs even k >= 2");
  Rational z = -bernoulli(k) / k;
  if (field.degree == 1) return z;
  return z * (-gen_bernoulli(k, field.discriminant) / k);
}

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

NumericValue riemann_zeta_numeric(double s, std::int64_t terms) {
  if (!(s > 1.0)) throw PreconditionError("riemann_zeta_numeric needs s > 1");
  if (terms < 1) throw PreconditionError("terms must be positive");
  long double sum = 0;
  for (std::int64_t n = terms; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -static_cast<long double>(s));
  // sum_{n>N} n^-s lies between the integrals over [N+1, inf) and [N, inf).
  const long double N = static_cast<long double>(terms);
  const long double hi = std::pow(N, 1.0L - s) / (s - 1.0L);
  const long double lo = std::pow(N + 1.0L, 1.0L - s) / (s - 1.0L);
  NumericValue out;
  out.value = static_cast<double>(sum + (hi + lo) / 2);
  out.abs_error_bound = static_cast<double>((hi - lo) / 2) + 4 * kEps * std::fabs(out.value) +
                        static_cast<double>(terms) * 1e-19 * std::fabs(out.value);
  return out;
}

NumericValue dirichlet_l_numeric(std::int64_t D, double s, std::int64_t terms) {
  if (D == 1) return riemann_zeta_numeric(s, terms);
  if (!(s > 1.0)) throw PreconditionError("dirichlet_l_numeric needs s > 1");
  if (terms < 1) throw PreconditionError("terms must be positive");
  long double sum = 0;
  for (std::int64_t n = terms; n >= 1; --n) {
    int chi = kronecker(D, n);
    if (chi == 0) continue;
    sum += chi * std::pow(static_cast<long double>(n), -static_cast<long double>(s));
  }
  // Partial sums of chi over any interval are at most D/2 in size.
  NumericValue out;
  out.value = static_cast<double>(sum);
  out.abs_error_bound = static_cast<double>(D) * std::pow(static_cast<double>(terms), -s) +
                        4 * kEps * std::fabs(out.value) + static_cast<double>(terms) * 1e-19;
  return out;
}

NumericValue operator*(const NumericValue& x, const NumericValue& y) {
  NumericValue out;
  out.value = x.value * y.value;
  out.abs_error_bound = std::fabs(x.value) * y.abs_error_bound + std::fabs(y.value) * x.abs_error_bound +
                        x.abs_error_bound * y.abs_error_bound + 2 * kEps * std::fabs(out.value);
  return out;
}

NumericValue zeta_numeric(const FieldDesc& field, double s, std::int64_t terms) {
  NumericValue z = riemann_zeta_numeric(s, terms);
  if (field.degree == 1) return z;
  return z * dirichlet_l_numeric(field.discriminant, s, terms);
}

NumericValue digamma(double x) {
  if (!(x > 0.0)) throw PreconditionError("digamma needs x > 0");
  long double shift = 0;
  long double y = x;
  while (y < 10) {
    shift += 1.0L / y;
    y += 1;
  }
  // psi(y) ~ log y - 1/(2y) - sum_k B_{2k} / (2k y^{2k})
  static const long double coeff[] = {1.0L / 12, -1.0L / 120, 1.0L / 252, -1.0L / 240, 1.0L / 132,
                                      -691.0L / 32760, 1.0L / 12};
  const long double inv2 = 1.0L / (y * y);
  long double p = inv2;
  long double series = 0;
  for (int i = 0; i < 6; ++i) {
    series += coeff[i] * p;
    p *= inv2;
  }
  const long double omitted = std::fabs(coeff[6] * p);
  NumericValue out;
  out.value = static_cast<double>(std::log(y) - 0.5L / y - series - shift);
  out.abs_error_bound = static_cast<double>(omitted) + 8 * kEps * (std::fabs(out.value) + 1);
  return out;
}

}  // namespace hmf
