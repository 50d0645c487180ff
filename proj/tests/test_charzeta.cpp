#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hmf/charzeta.hpp"
#include "oracles.hpp"

using namespace hmf;

namespace {

// B_k from the recurrence sum_{j <= m} C(m+1, j) B_j = 0, written out independently.
Rational recurrence_bernoulli(int k) {
  std::vector<Rational> B(static_cast<std::size_t>(k + 1));
  B[0] = 1;
  for (int m = 1; m <= k; ++m) {
    Rational s = 0;
    for (int j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * B[static_cast<std::size_t>(j)];
    B[static_cast<std::size_t>(m)] = -s / (m + 1);
  }
  return B[static_cast<std::size_t>(k)];
}

}  // namespace

TEST(Bernoulli, Examples) {
  EXPECT_EQ(bernoulli(2), make_rational(1, 6));
  EXPECT_EQ(bernoulli(4), make_rational(-1, 30));
  EXPECT_EQ(bernoulli(12), make_rational(-691, 2730));
  for (int k = 2; k <= 40; k += 2) EXPECT_EQ(bernoulli(k), recurrence_bernoulli(k)) << k;
}

TEST(Bernoulli, RejectsOddOrZero) {
  EXPECT_THROW(bernoulli(0), PreconditionError);
  EXPECT_THROW(bernoulli(3), PreconditionError);
  EXPECT_THROW(bernoulli(-2), PreconditionError);
}

TEST(GenBernoulli, Examples) {
  // D^(k-1) sum chi(a) B_2(a/D) with B_2(x) = x^2 - x + 1/6
  Rational direct = 0;
  for (int a = 1; a <= 5; ++a) {
    Rational x = make_rational(a, 5);
    direct += oracle::kronecker(5, a) * (x * x - x + make_rational(1, 6));
  }
  direct *= 5;
  EXPECT_EQ(direct, make_rational(4, 5));
  EXPECT_EQ(gen_bernoulli(2, 5), make_rational(4, 5));
  EXPECT_EQ(gen_bernoulli(2, 1), make_rational(1, 6));
  EXPECT_EQ(gen_bernoulli(1, 5), 0);
}

TEST(ZetaSpecial, Examples) {
  EXPECT_EQ(zeta_special(make_field(1), 2), make_rational(-1, 12));
  EXPECT_EQ(zeta_special(make_field(5), 2), make_rational(1, 30));
  EXPECT_EQ(zeta_special(make_field(1), 4), make_rational(1, 120));
}

TEST(ZetaSpecial, PropertyFunctionalEquationCrossCheck) {
  // zeta_F(1-k) = 4 ((k-1)!)^2 D^(k-1/2) (2 pi)^(-2k) zeta_F(k) for real quadratic F and even k.
  for (std::int64_t d : {5, 13}) {
    FieldDesc F = make_field(d);
    for (int k : {2, 4}) {
      NumericValue z = zeta_numeric(F, k, 200000);
      const double fact = std::tgamma(k);
      const double factor = 4 * fact * fact * std::pow(static_cast<double>(F.discriminant), k - 0.5) /
                            std::pow(2 * static_cast<double>(oracle::kPi), 2 * k);
      const double predicted = factor * z.value;
      EXPECT_NEAR(predicted, zeta_special(F, k).get_d(), 1e-8) << d << " " << k;
    }
  }
}

TEST(ZetaNumeric, Examples) {
  const double pi = static_cast<double>(oracle::kPi);
  NumericValue z = zeta_numeric(make_field(1), 2, 100000);
  EXPECT_TRUE(z.contains(pi * pi / 6));
  EXPECT_LT(z.abs_error_bound, 1e-9);
  NumericValue z5 = zeta_numeric(make_field(5), 2, 100000);
  const double closed = 2 * std::pow(pi, 4) / (75 * std::sqrt(5.0));
  EXPECT_TRUE(z5.contains(closed));
  EXPECT_NEAR(z5.value, 1.16167, 1e-5);
  for (std::int64_t d : {2, 3, 5, 13, 101}) EXPECT_GT(zeta_numeric(make_field(d), 2, 10000).lower(), 1.0);
  EXPECT_THROW(zeta_numeric(make_field(5), 1.0, 100), PreconditionError);
}

TEST(ZetaNumeric, PropertyDoublingStaysInsideBound) {
  for (std::int64_t d : {1, 5, 13, 2}) {
    FieldDesc F = make_field(d);
    for (double s : {1.5, 2.0, 3.0, 4.0}) {
      for (std::int64_t terms = 100; terms <= 51200; terms *= 2) {
        NumericValue a = zeta_numeric(F, s, terms), b = zeta_numeric(F, s, 2 * terms);
        EXPECT_TRUE(a.contains(b.value)) << d << " " << s << " " << terms;
      }
    }
  }
}

TEST(DirichletL, SqrtFiveClosedForm) {
  // L(2, chi_5) = 4 pi^2 / (25 sqrt 5)
  const double pi = static_cast<double>(oracle::kPi);
  NumericValue l = dirichlet_l_numeric(5, 2, 100000);
  EXPECT_TRUE(l.contains(4 * pi * pi / (25 * std::sqrt(5.0))));
}

TEST(Digamma, Examples) {
  EXPECT_NEAR(digamma(1).value, -static_cast<double>(oracle::kEulerGamma), 1e-12);
  EXPECT_TRUE(digamma(1).contains(-static_cast<double>(oracle::kEulerGamma)));
  const double half = -static_cast<double>(oracle::kEulerGamma + 2 * oracle::kLog2);
  EXPECT_TRUE(digamma(0.5).contains(half));
  EXPECT_NEAR(digamma(0.5).value, -1.96351, 1e-4);
  EXPECT_LT(digamma(0.6).value, digamma(0.8).value);
  EXPECT_THROW(digamma(0), PreconditionError);
  EXPECT_THROW(digamma(-1), PreconditionError);
}

TEST(Digamma, PropertyRecurrence) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> x(0.01, 50.0);
  for (int i = 0; i < 1000; ++i) {
    const double v = x(rng);
    NumericValue a = digamma(v + 1), b = digamma(v);
    EXPECT_LE(std::fabs(a.value - b.value - 1 / v), a.abs_error_bound + b.abs_error_bound + 1e-14 * (1 + 1 / v)) << v;
  }
}

TEST(Digamma, PropertyIncreasing) {
  double prev = digamma(0.05).value;
  for (double v = 0.1; v < 20; v += 0.05) {
    const double cur = digamma(v).value;
    EXPECT_GT(cur, prev);
    prev = cur;
  }
}

TEST(NumericValue, ProductPropagation) {
  NumericValue a{2.0, 0.01}, b{3.0, 0.02};
  NumericValue c = a * b;
  EXPECT_DOUBLE_EQ(c.value, 6.0);
  EXPECT_TRUE(c.contains(2.01 * 3.02));
  EXPECT_TRUE(c.contains(1.99 * 2.98));
}
