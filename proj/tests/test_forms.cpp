#include <gtest/gtest.h>

#include <random>

#include "hmf/charzeta.hpp"
#include "hmf/forms.hpp"
#include "oracles.hpp"

using namespace hmf;

namespace {

const FieldDesc& Q() {
  static const FieldDesc f = make_field(1);
  return f;
}
const FieldDesc& K5() {
  static const FieldDesc f = make_field(5);
  return f;
}

Ideal rational_ideal(std::int64_t n) { return ideal_of(Q(), FieldElement(make_rational(n))); }

FourierExpansion delta(std::int64_t T) {
  auto e4 = eisenstein(Q(), 4, T), e6 = eisenstein(Q(), 6, T);
  return normalize(construct_cusp_space({e4 * e4 * e4, e6 * e6}).at(0));
}

FourierExpansion s6(std::int64_t T) {
  auto e2 = eisenstein(K5(), 2, T);
  return normalize(construct_cusp_space({e2 * e2 * e2, eisenstein(K5(), 6, T)}).at(0));
}

bool same_nonconstant(const FourierExpansion& f, const FourierExpansion& g) {
  if (f.size() != g.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.at(i) != g.at(i)) return false;
  return true;
}

}  // namespace

TEST(Eisenstein, Examples) {
  FourierExpansion e4 = eisenstein(Q(), 4, 20);
  EXPECT_EQ(hecke_coeff(e4, rational_ideal(2)), Rational(oracle::sigma(2, 3)));
  EXPECT_EQ(hecke_coeff(e4, rational_ideal(2)), 9);
  EXPECT_EQ(hecke_coeff(e4, rational_ideal(6)), 252);
  FourierExpansion e2 = eisenstein(K5(), 2, 30);
  EXPECT_EQ(e2.const_term().a(), make_rational(1, 120));
  EXPECT_EQ(e2.const_term().a(), zeta_special(K5(), 2) / 4);
  SplittingData eleven = split_prime(K5(), 11);
  ASSERT_EQ(eleven.primes.size(), 2u);
  const Ideal p = Ideal::prime(eleven.primes[0]), q = Ideal::prime(eleven.primes[1]);
  FourierExpansion big = eisenstein(K5(), 2, trace_bound_for_norm(K5(), 121));
  EXPECT_EQ(hecke_coeff(big, p), 12);
  EXPECT_EQ(hecke_coeff(big, p) * hecke_coeff(big, q), hecke_coeff(big, p * q));
}

TEST(Eisenstein, RejectsBadWeights) {
  EXPECT_THROW(eisenstein(Q(), 2, 10), PreconditionError);
  EXPECT_THROW(eisenstein(Q(), 5, 10), PreconditionError);
  EXPECT_THROW(eisenstein(K5(), 0, 10), PreconditionError);
}

TEST(Eisenstein, DegreeOneMatchesClassical) {
  for (int k : {4, 6, 8, 10, 12, 14}) {
    auto oracle_series = oracle::classical_eisenstein(k, 60);
    FourierExpansion e = eisenstein(Q(), k, 60);
    EXPECT_EQ(e.const_term().a(), oracle_series[0]) << k;
    for (std::int64_t n = 1; n <= 60; ++n) EXPECT_EQ(e.coefficient(LatticePoint{n, 0}).a(), oracle_series[n]);
  }
}

TEST(Eisenstein, TableMatchesExpansion) {
  for (const FieldDesc* F : {&Q(), &K5()}) {
    const int k = F->degree == 1 ? 4 : 2;
    const std::int64_t B = 60;
    HeckeTable direct = eisenstein_table(*F, k, B);
    HeckeTable from_series =
        hecke_table(eisenstein(*F, k, trace_bound_for_norm(*F, B)), B, FormKind::eisenstein, "E");
    EXPECT_EQ(direct.values, from_series.values);
    EXPECT_TRUE(direct.normalized);
    EXPECT_EQ(direct.at(Ideal()), 1);
    EXPECT_THROW(direct.at(ideals_up_to(*F, B + 20).back()), TruncationError);
  }
}

TEST(HeckeCoeff, DeltaFromEisensteinCubes) {
  FourierExpansion d = delta(40);
  auto tau = oracle::delta_product(40);
  EXPECT_EQ(hecke_coeff(d, Ideal()), 1);
  EXPECT_EQ(hecke_coeff(d, rational_ideal(2)), -24);
  EXPECT_EQ(hecke_coeff(d, rational_ideal(6)), -6048);
  EXPECT_EQ(hecke_coeff(d, rational_ideal(6)), hecke_coeff(d, rational_ideal(2)) * 252);
  for (std::int64_t n = 1; n <= 40; ++n) EXPECT_EQ(hecke_coeff(d, rational_ideal(n)), Rational(tau[n])) << n;
  EXPECT_THROW(hecke_coeff(d, rational_ideal(41)), TruncationError);
}

TEST(HeckeOperator, Examples) {
  FourierExpansion d = delta(80);
  EXPECT_EQ(hecke_operator(d, Ideal()), d);
  FourierExpansion t2 = hecke_operator(d, rational_ideal(2));
  EXPECT_EQ(t2.trace_bound(), 40);
  EXPECT_TRUE(same_nonconstant(t2, scalar_mul(-24, truncate(d, 40))));
  for (int k : {4, 6}) {
    FourierExpansion e = eisenstein(Q(), k, 60);
    for (std::int64_t p : {2, 3, 5}) {
      FourierExpansion tp = hecke_operator(e, rational_ideal(p));
      EXPECT_TRUE(same_nonconstant(tp, scalar_mul(Rational(oracle::sigma(p, k - 1)), truncate(e, tp.trace_bound()))));
    }
  }
  const Ideal p = Ideal::prime(split_prime(K5(), 11).primes[0]);
  FourierExpansion e2 = eisenstein(K5(), 2, 60);
  FourierExpansion tp = hecke_operator(e2, p);
  EXPECT_TRUE(same_nonconstant(tp, scalar_mul(Rational(sigma(p, 1)), truncate(e2, tp.trace_bound()))));
}

TEST(HeckeOperator, RejectsInsufficientTruncation) {
  EXPECT_THROW(hecke_operator(delta(10), rational_ideal(11)), TruncationError);
}

TEST(HeckeOperator, PropertyIdentityCoefficientIsHeckeCoefficient) {
  FourierExpansion d = delta(60);
  for (std::int64_t n = 1; n <= 12; ++n) {
    const Ideal id = rational_ideal(n);
    EXPECT_EQ(hecke_coeff(hecke_operator(d, id), Ideal()), hecke_coeff(d, id)) << n;
  }
  FourierExpansion s = s6(40);
  FourierExpansion e = eisenstein(K5(), 4, 40);
  for (const Ideal& id : ideals_up_to(K5(), 20)) {
    EXPECT_EQ(hecke_coeff(hecke_operator(s, id), Ideal()), hecke_coeff(s, id)) << id.to_string();
    EXPECT_EQ(hecke_coeff(hecke_operator(e, id), Ideal()), hecke_coeff(e, id)) << id.to_string();
  }
}

TEST(Eigencheck, Examples) {
  HeckeReport r4 = eigencheck(eisenstein(Q(), 4, 200), 200);
  EXPECT_EQ(r4.status, HeckeStatus::consistent);
  EXPECT_TRUE(r4.witnesses.empty());
  EXPECT_EQ(r4.tested_bound, 200);
  EXPECT_GT(r4.multiplicativity_checks, 0);
  EXPECT_GT(r4.recurrence_checks, 0);
  EXPECT_EQ(eigencheck(delta(200), 200).status, HeckeStatus::consistent);
  HeckeReport capped = eigencheck(eisenstein(Q(), 4, 50), 200);
  EXPECT_EQ(capped.tested_bound, 50);
}

TEST(Eigencheck, ProductWithDeltaIsWeightSixteenEigenform) {
  const std::int64_t T = 120;
  FourierExpansion d = delta(T);
  FourierExpansion prod = eisenstein(Q(), 4, T) * d;
  HeckeReport r = eigencheck(prod, T);
  EXPECT_EQ(r.status, HeckeStatus::consistent);
  std::vector<FourierExpansion> s16 = construct_cusp_space(eisenstein_monomials(Q(), 16, T));
  ASSERT_EQ(s16.size(), 1u);
  EXPECT_EQ(normalize(prod), normalize(s16[0]));
}

TEST(Eigencheck, NonEigenformHasWitnesses) {
  const std::int64_t T = 60;
  FourierExpansion f = eisenstein(Q(), 6, T) * eisenstein(Q(), 6, T);
  HeckeReport r = eigencheck(f, T);
  EXPECT_EQ(r.status, HeckeStatus::violated);
  ASSERT_FALSE(r.witnesses.empty());
  for (const HeckeWitness& w : r.witnesses) EXPECT_NE(w.lhs, w.rhs);
}

TEST(Eigencheck, PropertySigmaMultiplicativity) {
  for (std::int64_t d : {1, 2, 5, 13}) {
    FieldDesc F = make_field(d);
    const std::int64_t B = d == 1 ? 200 : 100;
    const std::int64_t T = trace_bound_for_norm(F, B);
    for (int k : {2, 4, 6}) {
      if (F.degree == 1 && k == 2) continue;
      HeckeReport r = eigencheck(eisenstein(F, k, T), B);
      EXPECT_EQ(r.status, HeckeStatus::consistent) << d << " " << k;
      EXPECT_TRUE(r.witnesses.empty());
    }
  }
}

TEST(Eigencheck, PropertyNotNormalizable) {
  FourierExpansion f(Q(), WeightVector::parallel(1, 12), 20);
  f.set(LatticePoint{2, 0}, FieldElement(make_rational(1)));
  EXPECT_EQ(eigencheck(f, 20).status, HeckeStatus::not_normalizable);
  EXPECT_THROW(normalize(f), PreconditionError);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-9, 9);
  for (int trial = 0; trial < 5; ++trial) {
    FourierExpansion g(K5(), WeightVector::parallel(2, 4), 12);
    for (std::size_t i = 1; i < g.size(); ++i) g.set_at(i, make_rational(c(rng)));
    g.set_at(0, 0);
    g.set(LatticePoint{2, 0}, FieldElement(K5().ring, 1));
    EXPECT_EQ(eigencheck(g, 30).status, HeckeStatus::not_normalizable);
  }
}

TEST(Eigencheck, PropertyCuspProductVanishesAtMinimalTrace) {
  FourierExpansion d = delta(20);
  FourierExpansion dd = d * d;
  EXPECT_TRUE(dd.const_term().is_zero());
  EXPECT_TRUE(dd.coefficient(LatticePoint{1, 0}).is_zero());
  EXPECT_EQ(dd.coefficient(LatticePoint{2, 0}).a(), 1);
  FourierExpansion s = s6(20);
  FourierExpansion ss = s * s;
  for (std::int64_t t = 2; t <= 3; ++t)
    for (std::size_t i = ss.box().offset(t); i < ss.box().offset(t + 1); ++i) EXPECT_TRUE(ss.at(i).is_zero());
  EXPECT_EQ(hecke_coeff(ss, Ideal()), 0);
  EXPECT_EQ(eigencheck(ss, 30).status, HeckeStatus::not_normalizable);
}

TEST(SpanRank, Examples) {
  auto e4 = eisenstein(Q(), 4, 50);
  EXPECT_EQ(span_rank({e4 * e4, eisenstein(Q(), 8, 50)}).rank, 1u);
  auto e2 = eisenstein(K5(), 2, 30);
  EXPECT_EQ(span_rank({e2 * e2 * e2, eisenstein(K5(), 6, 30)}).rank, 2u);
  SpanResult twice = span_rank({e4, scalar_mul(2, e4)});
  EXPECT_EQ(twice.rank, 1u);
  ASSERT_EQ(twice.kernel.size(), 1u);
  EXPECT_TRUE(add(scalar_mul(twice.kernel[0][0], e4), scalar_mul(twice.kernel[0][1], scalar_mul(2, e4))).is_zero());
}

TEST(SpanRank, PropertyInvariantUnderRecombination) {
  std::vector<FourierExpansion> gens = eisenstein_monomials(K5(), 8, 24);
  const std::size_t rank = span_rank(gens).rank;
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int trial = 0; trial < 5; ++trial) {
    // unipotent upper triangular recombination is invertible
    std::vector<FourierExpansion> mixed = gens;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) mixed[i] = add(mixed[i], scalar_mul(c(rng), gens[j]));
    SpanResult r = span_rank(mixed);
    EXPECT_EQ(r.rank, rank);
    EXPECT_EQ(r.kernel.size(), gens.size() - rank);
    for (const auto& v : r.kernel) {
      FourierExpansion acc = scalar_mul(0, mixed[0]);
      for (std::size_t i = 0; i < mixed.size(); ++i) acc = add(acc, scalar_mul(v[i], mixed[i]));
      EXPECT_TRUE(acc.is_zero());
    }
  }
}

TEST(CuspSpace, Examples) {
  FourierExpansion d = delta(30);
  EXPECT_EQ(hecke_coeff(d, rational_ideal(2)), -24);
  auto e4 = eisenstein(Q(), 4, 30);
  EXPECT_TRUE(construct_cusp_space({e4 * e4}).empty());
  FourierExpansion s = s6(trace_bound_for_norm(K5(), 100));
  EXPECT_TRUE(s.const_term().is_zero());
  EXPECT_EQ(eigencheck(s, 100).status, HeckeStatus::consistent);
  EXPECT_THROW(construct_cusp_space({}), PreconditionError);
}

TEST(Eigenbasis, Examples) {
  FourierExpansion d = delta(40);
  EigenbasisResult one = eigenbasis({scalar_mul(7, d)}, rational_ideal(2));
  ASSERT_TRUE(one.split);
  ASSERT_EQ(one.eigenforms.size(), 1u);
  EXPECT_EQ(one.eigenforms[0], d);
  EXPECT_EQ(one.eigenvalues, std::vector<Integer>{Integer(-24)});

  std::vector<FourierExpansion> s24 = construct_cusp_space(eisenstein_monomials(Q(), 24, 80));
  ASSERT_EQ(s24.size(), 2u);
  EigenbasisResult r = eigenbasis(s24, rational_ideal(2));
  // T_2 on S_24 has irrational eigenvalues 540 +- 12 sqrt(144169)
  EXPECT_FALSE(r.split);
  EXPECT_FALSE(r.diagnostic.empty());
  ASSERT_EQ(r.charpoly.size(), 3u);
  EXPECT_EQ(r.charpoly[2], 1);
  EXPECT_EQ(r.charpoly[1], -1080);
}

TEST(Eigenbasis, WeightTenOverSqrtFive) {
  const std::int64_t T = 40;
  std::vector<FourierExpansion> s10 = construct_cusp_space(eisenstein_monomials(K5(), 10, T));
  ASSERT_GE(s10.size(), 2u);
  const Ideal p = Ideal::prime(split_prime(K5(), 2).primes[0]);
  EigenbasisResult r = eigenbasis(s10, p);
  if (r.split) {
    ASSERT_EQ(r.eigenforms.size(), s10.size());
    for (const FourierExpansion& f : r.eigenforms) EXPECT_EQ(eigencheck(f, 30).status, HeckeStatus::consistent);
  } else {
    EXPECT_FALSE(r.diagnostic.empty());
    EXPECT_EQ(r.charpoly.size(), s10.size() + 1);
  }
}

TEST(Scan, DegreeOneIdentities) {
  auto e4 = eisenstein(Q(), 4, 60);
  EXPECT_TRUE(rc_bracket(e4, e4, 1).is_zero());
  FourierExpansion b2 = rc_bracket(e4, e4, 2);
  EXPECT_EQ(b2.weight(), WeightVector::parallel(1, 12));
  EXPECT_EQ(b2.twopi_power(), 2);
  EXPECT_TRUE(b2.const_term().is_zero());
  EXPECT_TRUE(same_nonconstant(normalize(b2), delta(60)));
  ScanReport r = scan_equal_weight_brackets(Q(), 8, 1, 50);
  EXPECT_TRUE(r.odd_degree_identity_checked);
  EXPECT_TRUE(r.odd_degree_identity_holds);
  for (const ScanRow& row : r.rows) EXPECT_TRUE(row.bracket_zero) << row.k;
  ScanReport r2 = scan_equal_weight_brackets(Q(), 8, 2, 50);
  ASSERT_FALSE(r2.rows.empty());
  EXPECT_EQ(r2.rows.front().k, 4);
  EXPECT_EQ(r2.rows.front().report.status, HeckeStatus::consistent);
}

TEST(Scan, SqrtFiveViolationTable) {
  ScanReport r = scan_equal_weight_brackets(K5(), 8, 1, 30);
  EXPECT_FALSE(r.odd_degree_identity_checked);
  ASSERT_EQ(r.rows.size(), 4u);
  bool any_violation = false;
  for (const ScanRow& row : r.rows) {
    EXPECT_FALSE(row.bracket_zero);
    if (row.report.status == HeckeStatus::violated) {
      any_violation = true;
      EXPECT_FALSE(row.report.witnesses.empty());
    }
  }
  EXPECT_TRUE(any_violation);
  EXPECT_THROW(scan_equal_weight_brackets(K5(), 7, 1, 30), PreconditionError);
}

TEST(DeskInstance, EisensteinTimesCusp) {
  DeskInstance inst = desk_instance_eisenstein_times_cusp(K5(), 200);
  EXPECT_EQ(inst.target_weight, 10);
  EXPECT_TRUE(inst.as_expected);
  if (inst.hypothesis_met) {
    EXPECT_EQ(inst.report.status, HeckeStatus::violated);
    EXPECT_FALSE(inst.report.witnesses.empty());
  }
  EXPECT_FALSE(inst.branch.empty());
}

TEST(DeskInstance, EisensteinBracket) {
  for (int m = 0; m <= 2; ++m) {
    DeskInstance inst = desk_instance_eisenstein_bracket(K5(), m, 60);
    EXPECT_EQ(inst.target_weight, 6 + 2 * m);
    EXPECT_EQ(inst.required_rank, m == 0 ? 1u : 2u);
    EXPECT_TRUE(inst.as_expected) << m;
    if (inst.hypothesis_met) EXPECT_EQ(inst.report.status, HeckeStatus::violated) << m;
  }
}
