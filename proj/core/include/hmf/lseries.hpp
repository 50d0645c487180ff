#pragma once

// Truncated Dirichlet series attached to Hecke tables: L(s, f), the
// Rankin-Selberg series L(s, f, h), the orbit-sum versus ideal-sum identity,
// the product identity L(s, f, E_l) zeta_F(k) = L(s, f) L(k + m, f) and
// nonvanishing certificates.
//
// Inside the half-plane of absolute convergence every value carries a
// rigorous tail budget from |sum_{N(n) = x} c(n)| <= d(x)^P x^E. Outside it,
// check_rs_factorization falls back to a smoothed sum with Richardson
// extrapolation, whose error is an estimate only.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hmf/charzeta.hpp"
#include "hmf/forms.hpp"

namespace hmf {

/// |sum over ideals of norm x of the coefficient| <= d(x)^divisor_power * x^exponent.
struct CoefficientGrowth {
  int divisor_power = 0;
  double exponent = 0.0;
};

CoefficientGrowth growth(const HeckeTable& table);
CoefficientGrowth growth_product(const HeckeTable& f, const HeckeTable& h);

/// Bound for sum_{x > B} d(x)^P x^(E - s); infinite when s <= E + 1.
double tail_bound(const CoefficientGrowth& g, double s, std::int64_t bound);

struct LTruncation {
  std::vector<std::string> ids;
  double s = 0.0;
  std::int64_t bound = 0;
  /// (norm, sum of c(n) N(n)^-s over ideals of that norm), sorted by norm.
  std::vector<std::pair<std::int64_t, double>> terms;
  /// value = partial sum, abs_error_bound = tail budget plus rounding.
  NumericValue partial_sum;
  double tail = 0.0;
  bool region_ok = false;
};

/// sum_{N(n) <= B} c(n, f) N(n)^-s, B = min(norm_bound, table bound).
LTruncation l_value(const HeckeTable& f, double s, std::int64_t norm_bound);

/// sum_{N(n) <= B} c(n, f) c(n, h) N(n)^-s.
LTruncation rs_l_value(const HeckeTable& f, const HeckeTable& h, double s, std::int64_t norm_bound);

/// Smoothed sum_{N(n) <= B} c(n) N(n)^-s exp(-N(n)/X), combined over
/// X, 2X, 4X so the 1/X and 1/X^2 terms cancel. X = B/120.
struct SmoothedValue {
  double value = 0.0;
  double estimated_error = 0.0;
  double x = 0.0;
};
SmoothedValue smoothed_l_value(const std::vector<std::pair<std::int64_t, Rational>>& coefficients, double s,
                               std::int64_t bound);

struct OrbitSumReport {
  double s = 0.0;
  std::int64_t trace_bound = 0;
  std::int64_t norm_bound = 0;
  double orbit_sum = 0.0;
  double ideal_sum = 0.0;
  double discrepancy = 0.0;
  /// Exact contribution of ideals counted by one route only.
  double cutoff_difference = 0.0;
  double tail_budget = 0.0;
  double rounding = 0.0;
  bool region_ok = false;
  bool agrees = false;
};

/// Route A: sum over orbit representatives nu in the trace box of
/// a(nu) b(nu) N(nu)^-s. Route B: the Rankin-Selberg ideal sum up to the
/// largest norm B fully covered by route A.
OrbitSumReport check_orbit_sum_identity(const FourierExpansion& f, const FourierExpansion& h, double s);

struct FactorValue {
  std::string name;
  double s = 0.0;
  std::string method;  // "truncated", "smoothed" or "reference"
  bool region_ok = false;
  double value = 0.0;
  double error = 0.0;
  bool rigorous = false;
};

struct FactorizationReport {
  int k = 0, l = 0, m = 0;
  double s = 0.0;
  std::int64_t bound = 0;
  std::vector<FactorValue> factors;
  double lhs = 0.0;
  double rhs = 0.0;
  double relative_discrepancy = 0.0;
  double error_budget = 0.0;
  double tol = 0.0;
  bool all_rigorous = false;
  bool passed = false;
};

/// Checks L(s, f, E_l) zeta_F(k) = L(s, f) L(k + m, f) at s = k + l + m - 1
/// for a normalized cusp eigenform f of weight k + l + 2m. `f` must cover
/// norms up to `bound`.
FactorizationReport check_rs_factorization(const FieldDesc& field, const HeckeTable& f, int l, int k, int m,
                                           std::int64_t bound, double tol);

struct WitnessRow {
  double s = 0.0;
  std::int64_t bound = 0;
  double value = 0.0;
  double tail_bound = 0.0;
  std::string verdict;
};

struct NonvanishingReport {
  bool region_ok = false;
  bool certified = false;
  std::vector<WitnessRow> rows;
  std::string diagnostic;
};

/// Partial sums of L(s, f, h) at the given bounds; certified when the last
/// interval excludes zero.
NonvanishingReport nonvanishing_witness(const HeckeTable& f, const HeckeTable& h, double s,
                                        const std::vector<std::int64_t>& bounds);

nlohmann::json to_json(const LTruncation& t);
nlohmann::json to_json(const OrbitSumReport& r);
nlohmann::json to_json(const FactorizationReport& r);
nlohmann::json to_json(const NonvanishingReport& r);

}  // namespace hmf
