#pragma once

// Bernoulli numbers, special values of Dedekind zeta functions of real
// quadratic fields, truncated Dirichlet series with rigorous tail bounds,
// Kronecker symbols and the digamma function.

#include <cstdint>

#include "hmf/numfield.hpp"
#include "hmf/rational.hpp"

namespace hmf {

/// A floating approximation together with a rigorous absolute error bound.
struct NumericValue {
  double value = 0.0;
  double abs_error_bound = 0.0;

  bool contains(double x) const { return x >= value - abs_error_bound && x <= value + abs_error_bound; }
  double lower() const { return value - abs_error_bound; }
  double upper() const { return value + abs_error_bound; }
};

/// Kronecker symbol (D/n), n >= 1.
int kronecker(std::int64_t D, std::int64_t n);

/// B_k for even k >= 2; odd or zero k is rejected.
Rational bernoulli(int k);

/// All of B_0..B_k with B_1 = -1/2.
std::vector<Rational> bernoulli_table(int k);

/// Bernoulli polynomial B_k(x).
Rational bernoulli_polynomial(int k, const Rational& x);

/// B_{k,chi_D} = D^{k-1} sum_{a=1}^{D} chi_D(a) B_k(a/D).
Rational gen_bernoulli(int k, std::int64_t D);

/// zeta_F(1 - k) for even k >= 2, exact.
Rational zeta_special(const FieldDesc& field, int k);

/// zeta_F(s) = zeta(s) L(s, chi_D) with both factors truncated at `terms`.
NumericValue zeta_numeric(const FieldDesc& field, double s, std::int64_t terms);

/// Riemann zeta(s) truncated at `terms`, bracketed between the two tail integrals.
NumericValue riemann_zeta_numeric(double s, std::int64_t terms);

/// L(s, chi_D) truncated at `terms`; tail bounded by partial summation.
NumericValue dirichlet_l_numeric(std::int64_t D, double s, std::int64_t terms);

/// psi(x), x > 0.
NumericValue digamma(double x);

NumericValue operator*(const NumericValue& x, const NumericValue& y);

}  // namespace hmf
