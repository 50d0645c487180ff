#include "hmf/lseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>

namespace hmf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log C_eps with d(n) <= C_eps n^eps, C_eps = prod_{p < 2^(1/eps)} max_a (a+1)/p^(a eps).
double log_divisor_constant(double eps) {
  const auto limit = static_cast<std::int64_t>(std::ceil(std::pow(2.0, 1.0 / eps)));
  double total = 0.0;
  for (std::int64_t p : primes_up_to(limit)) {
    double best = 0.0;
    const double lp = std::log(static_cast<double>(p));
    for (int a = 1; a < 400; ++a) best = std::max(best, std::log(a + 1.0) - a * eps * lp);
    total += best;
  }
  return total;
}

struct DivisorConstant {
  double eps;
  double log_c;
};

const std::vector<DivisorConstant>& divisor_constants() {
  static const std::vector<DivisorConstant> table = [] {
    std::vector<DivisorConstant> t;
    for (double eps : {1.0, 0.5, 1.0 / 3, 0.25, 0.2, 1.0 / 6, 0.125, 0.1})
      t.push_back({eps, log_divisor_constant(eps)});
    return t;
  }();
  return table;
}

// d(x)^P <= d_K(x) with K = 2^P and sum_{x <= y} d_K(x) <= y (1 + log y)^(K - 1).
// Partial summation gives (s - E) e^a Gamma(K, a (1 + log B)) / a^K with a = s - E - 1.
double divisor_moment_tail(const CoefficientGrowth& g, double s, double logB) {
  const double a = s - g.exponent - 1.0;
  if (a <= 0) return kInf;
  const int K = 1 << g.divisor_power;
  const double z = a * (1.0 + logB);
  // Gamma(K, z) = (K - 1)! e^-z sum_{j < K} z^j / j!
  double series = 0.0, term = 1.0;
  for (int j = 0; j < K; ++j) {
    if (j > 0) term *= z / j;
    series += term;
  }
  const double log_value = std::log(s - g.exponent) + a + std::lgamma(static_cast<double>(K)) - z +
                           std::log(series) - K * std::log(a);
  return std::exp(log_value);
}

double rounding_bound(const std::vector<std::pair<std::int64_t, double>>& terms) {
  long double abs_sum = 0;
  for (const auto& [n, v] : terms) abs_sum += std::fabs(v);
  return static_cast<double>(abs_sum) * 1e-15;
}

CoefficientGrowth single_growth(FormKind kind, int weight, int degree) {
  CoefficientGrowth g;
  if (weight == 0) {
    g.divisor_power = degree - 1;
    g.exponent = 0.0;
    return g;
  }
  g.divisor_power = degree == 1 ? 1 : 2;
  g.exponent = kind == FormKind::cusp ? (weight - 1) / 2.0 : weight - 1.0;
  return g;
}

LTruncation finish_truncation(std::vector<std::string> ids, double s, std::int64_t B,
                              std::vector<std::pair<std::int64_t, double>> terms, const CoefficientGrowth& g) {
  LTruncation t;
  t.ids = std::move(ids);
  t.s = s;
  t.bound = B;
  long double sum = 0;
  for (const auto& [n, v] : terms) sum += v;
  t.terms = std::move(terms);
  t.tail = tail_bound(g, s, B);
  t.region_ok = s > g.exponent + 1.0;
  t.partial_sum.value = static_cast<double>(sum);
  t.partial_sum.abs_error_bound = t.tail + rounding_bound(t.terms);
  return t;
}

// Aggregates per norm: sum over ideals of norm x of the coefficient product.
std::vector<std::pair<std::int64_t, Rational>> aggregate(const HeckeTable& f, const HeckeTable* h, std::int64_t B) {
  std::vector<std::pair<std::int64_t, Rational>> out;
  for (const auto& [n, c] : f.values) {
    const std::int64_t x = n.norm();
    if (x > B) break;
    Rational v = h ? Rational(c * h->at(n)) : c;
    if (!out.empty() && out.back().first == x) out.back().second += v;
    else out.emplace_back(x, std::move(v));
  }
  return out;
}

std::vector<std::pair<std::int64_t, double>> weighted_terms(const std::vector<std::pair<std::int64_t, Rational>>& c,
                                                            double s) {
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(c.size());
  for (const auto& [x, v] : c) {
    long double term = static_cast<long double>(v.get_d()) *
                       std::pow(static_cast<long double>(x), -static_cast<long double>(s));
    out.emplace_back(x, static_cast<double>(term));
  }
  return out;
}

}  // namespace

CoefficientGrowth growth(const HeckeTable& table) {
  return single_growth(table.kind, table.weight, table.field.degree);
}

CoefficientGrowth growth_product(const HeckeTable& f, const HeckeTable& h) {
  CoefficientGrowth a = growth(f), b = growth(h);
  return CoefficientGrowth{a.divisor_power + b.divisor_power, a.exponent + b.exponent};
}

double tail_bound(const CoefficientGrowth& g, double s, std::int64_t bound) {
  if (bound < 1) throw PreconditionError("tail bound needs a positive cutoff");
  const double logB = std::log(static_cast<double>(bound));
  if (g.divisor_power == 0) {
    const double gap = s - g.exponent - 1.0;
    if (gap <= 0) return kInf;
    return std::exp(-gap * logB) / gap;
  }
  double best = divisor_moment_tail(g, s, logB);
  for (const auto& [eps, log_c] : divisor_constants()) {
    const double gap = s - g.exponent - g.divisor_power * eps - 1.0;
    if (gap <= 0) continue;
    best = std::min(best, std::exp(g.divisor_power * log_c - gap * logB) / gap);
  }
  return best;
}

LTruncation l_value(const HeckeTable& f, double s, std::int64_t norm_bound) {
  const std::int64_t B = std::min(norm_bound, f.norm_bound);
  return finish_truncation({f.id}, s, B, weighted_terms(aggregate(f, nullptr, B), s), growth(f));
}

LTruncation rs_l_value(const HeckeTable& f, const HeckeTable& h, double s, std::int64_t norm_bound) {
  if (f.field.d != h.field.d) throw PreconditionError("Hecke tables over different fields");
  const std::int64_t B = std::min({norm_bound, f.norm_bound, h.norm_bound});
  return finish_truncation({f.id, h.id}, s, B, weighted_terms(aggregate(f, &h, B), s), growth_product(f, h));
}

SmoothedValue smoothed_l_value(const std::vector<std::pair<std::int64_t, Rational>>& coefficients, double s,
                               std::int64_t bound) {
  if (bound < 240) throw PreconditionError("smoothed sums need a norm bound of at least 240");
  std::vector<std::pair<long double, long double>> terms;
  for (const auto& [x, c] : coefficients) {
    if (x > bound) break;
    terms.emplace_back(static_cast<long double>(x), static_cast<long double>(c.get_d()) *
                                                        std::pow(static_cast<long double>(x), -static_cast<long double>(s)));
  }
  auto sum = [&](long double X) {
    long double acc = 0;
    for (const auto& [x, t] : terms) acc += t * std::exp(-x / X);
    return acc;
  };
  const long double X = static_cast<long double>(bound) / 120.0L;
  const long double s_half = sum(X / 2), s1 = sum(X), s2 = sum(2 * X), s4 = sum(4 * X);
  // S_Y = L(s) - L(s-1)/Y + L(s-2)/(2Y^2) - ...; the combination cancels Y^-1 and Y^-2.
  const long double r1 = (s1 - 6 * s2 + 8 * s4) / 3;
  const long double r_half = (s_half - 6 * s1 + 8 * s2) / 3;
  SmoothedValue out;
  out.value = static_cast<double>(r1);
  out.estimated_error = static_cast<double>(std::fabs(r1 - r_half) / 7);
  out.x = static_cast<double>(X);
  return out;
}

// ---------------------------------------------------------------------------

OrbitSumReport check_orbit_sum_identity(const FourierExpansion& f, const FourierExpansion& h, double s) {
  if (f.field().d != h.field().d) throw PreconditionError("expansions over different fields");
  if (!f.weight().is_parallel() || !h.weight().is_parallel())
    throw PreconditionError("orbit-sum identity is implemented for parallel weights only");
  if (!f.is_rational() || !h.is_rational())
    throw PreconditionError("orbit-sum identity needs real (rational) coefficients");
  const FieldDesc& field = f.field();
  OrbitSumReport r;
  r.s = s;
  r.trace_bound = std::min(f.trace_bound(), h.trace_bound());
  if (field.degree == 1) {
    r.norm_bound = r.trace_bound;
  } else {
    // canonical reps have Tr <= Tr(eta) sqrt(N)
    const long double factor = field.totally_positive_unit().trace().get_d();
    const long double x = static_cast<long double>(r.trace_bound) / factor;
    r.norm_bound = static_cast<std::int64_t>(std::floor(x * x * (1.0L - 1e-12L)));
  }
  if (r.norm_bound < 1) throw TruncationError("trace bound too small for the orbit-sum identity");

  // Route A
  std::vector<std::pair<std::int64_t, double>> route_a;
  long double outside = 0;
  const TraceBox box(field.ring, r.trace_bound);
  for (std::size_t i = 0; i < box.size(); ++i) {
    const FieldElement nu = to_element(field.ring, box.key(i));
    if (field.degree == 2 && !(canonical_orbit_rep(field, nu) == nu)) continue;
    const Rational prod = f.coeff_a(i) * h.coeff_a(i);
    if (sgn(prod) == 0) continue;
    const std::int64_t norm = to_int64(nu.norm().get_num());
    const double term = static_cast<double>(static_cast<long double>(prod.get_d()) *
                                            std::pow(static_cast<long double>(norm), -static_cast<long double>(s)));
    route_a.emplace_back(norm, term);
    if (norm > r.norm_bound) outside += term;
  }
  std::stable_sort(route_a.begin(), route_a.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  long double sum_a = 0;
  for (const auto& [n, t] : route_a) sum_a += t;

  // Route B
  const FormKind kf = f.const_term().is_zero() ? FormKind::cusp : FormKind::eisenstein;
  const FormKind kh = h.const_term().is_zero() ? FormKind::cusp : FormKind::eisenstein;
  const HeckeTable tf = hecke_table(f, r.norm_bound, kf, "f", false);
  const HeckeTable th = hecke_table(h, r.norm_bound, kh, "h", false);
  const LTruncation lt = rs_l_value(tf, th, s, r.norm_bound);

  r.orbit_sum = static_cast<double>(sum_a);
  r.ideal_sum = lt.partial_sum.value;
  r.discrepancy = r.orbit_sum - r.ideal_sum;
  r.cutoff_difference = static_cast<double>(outside);
  const double scale = std::fabs(hecke_coeff(f, Ideal{}).get_d() * hecke_coeff(h, Ideal{}).get_d());
  r.tail_budget = scale * lt.tail;
  r.rounding = rounding_bound(route_a) + rounding_bound(lt.terms) + 1e-300;
  r.region_ok = lt.region_ok;
  r.agrees = std::fabs(r.discrepancy - r.cutoff_difference) <= r.rounding &&
             std::fabs(r.discrepancy) <= r.tail_budget + r.rounding;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

FactorValue evaluate_factor(const std::string& name, const std::vector<std::pair<std::int64_t, Rational>>& coeffs,
                            const CoefficientGrowth& g, double s, std::int64_t B) {
  FactorValue v;
  v.name = name;
  v.s = s;
  v.region_ok = s > g.exponent + 1.0;
  if (v.region_ok) {
    auto terms = weighted_terms(coeffs, s);
    long double sum = 0;
    for (const auto& [n, t] : terms) sum += t;
    v.method = "truncated";
    v.value = static_cast<double>(sum);
    v.error = tail_bound(g, s, B) + rounding_bound(terms);
    v.rigorous = true;
  } else {
    SmoothedValue sm = smoothed_l_value(coeffs, s, B);
    v.method = "smoothed";
    v.value = sm.value;
    v.error = sm.estimated_error;
    v.rigorous = false;
  }
  return v;
}

}  // namespace

FactorizationReport check_rs_factorization(const FieldDesc& field, const HeckeTable& f, int l, int k, int m,
                                           std::int64_t bound, double tol) {
  if (k < 2 || l < 2 || k % 2 || l % 2) throw PreconditionError("k and l must be even and >= 2");
  if (m < 0) throw PreconditionError("m must be non-negative");
  if (f.weight != k + l + 2 * m)
    throw PreconditionError("weight of f is " + std::to_string(f.weight) + ", expected k + l + 2m = " +
                            std::to_string(k + l + 2 * m));
  if (f.kind != FormKind::cusp || !f.normalized) throw PreconditionError("f must be a normalized cusp eigenform table");
  if (f.field.d != field.d) throw PreconditionError("table over a different field");
  if (field.degree == 1 && l == 2) throw PreconditionError("E_2 over Q is not holomorphic");
  FactorizationReport rep;
  rep.k = k;
  rep.l = l;
  rep.m = m;
  rep.s = k + l + m - 1;
  rep.bound = std::min(bound, f.norm_bound);
  rep.tol = tol;
  const HeckeTable el = eisenstein_table(field, l, rep.bound);

  const auto c_fe = aggregate(f, &el, rep.bound);
  const auto c_f = aggregate(f, nullptr, rep.bound);
  FactorValue rs = evaluate_factor("L(s,f,E_l)", c_fe, growth_product(f, el), rep.s, rep.bound);
  FactorValue lf = evaluate_factor("L(s,f)", c_f, growth(f), rep.s, rep.bound);
  FactorValue lkm = evaluate_factor("L(k+m,f)", c_f, growth(f), k + m, rep.bound);
  NumericValue z = zeta_numeric(field, k, 200000);
  FactorValue zv{"zeta_F(k)", static_cast<double>(k), "reference", true, z.value, z.abs_error_bound, true};
  rep.factors = {rs, zv, lf, lkm};

  rep.lhs = rs.value * zv.value;
  rep.rhs = lf.value * lkm.value;
  rep.relative_discrepancy = std::fabs(rep.lhs - rep.rhs) / std::fabs(rep.rhs);
  rep.error_budget = 0.0;
  for (const auto& fv : rep.factors) rep.error_budget += fv.error / std::fabs(fv.value);
  rep.all_rigorous = std::all_of(rep.factors.begin(), rep.factors.end(), [](const FactorValue& x) { return x.rigorous; });
  rep.passed = rep.relative_discrepancy <= tol + rep.error_budget;
  return rep;
}

NonvanishingReport nonvanishing_witness(const HeckeTable& f, const HeckeTable& h, double s,
                                        const std::vector<std::int64_t>& bounds) {
  NonvanishingReport rep;
  const CoefficientGrowth g = growth_product(f, h);
  rep.region_ok = s > g.exponent + 1.0;
  if (!rep.region_ok) {
    rep.diagnostic = "s = " + std::to_string(s) + " is not beyond the abscissa of absolute convergence " +
                     std::to_string(g.exponent + 1.0) + "; no certificate attempted";
    return rep;
  }
  if (bounds.empty()) throw PreconditionError("nonvanishing witness needs at least one bound");
  for (std::int64_t B : bounds) {
    LTruncation t = rs_l_value(f, h, s, B);
    WitnessRow row;
    row.s = s;
    row.bound = t.bound;
    row.value = t.partial_sum.value;
    row.tail_bound = t.partial_sum.abs_error_bound;
    row.verdict = std::fabs(row.value) > row.tail_bound ? "nonvanishing" : "inconclusive";
    rep.rows.push_back(row);
  }
  rep.certified = rep.rows.back().verdict == "nonvanishing";
  if (!rep.certified) rep.diagnostic = "tail budget does not separate the partial sum from zero";
  return rep;
}

// ---------------------------------------------------------------------------

namespace {
nlohmann::json finite_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }
}  // namespace

nlohmann::json to_json(const LTruncation& t) {
  return {{"ids", t.ids},
          {"s", t.s},
          {"bound", t.bound},
          {"value", t.partial_sum.value},
          {"tail_bound", finite_or_null(t.partial_sum.abs_error_bound)},
          {"region_ok", t.region_ok},
          {"verdict", t.region_ok ? "absolutely convergent" : "outside absolute convergence"}};
}

nlohmann::json to_json(const OrbitSumReport& r) {
  return {{"s", r.s},
          {"trace_bound", r.trace_bound},
          {"norm_bound", r.norm_bound},
          {"orbit_sum", r.orbit_sum},
          {"ideal_sum", r.ideal_sum},
          {"discrepancy", r.discrepancy},
          {"cutoff_difference", r.cutoff_difference},
          {"tail_budget", finite_or_null(r.tail_budget)},
          {"region_ok", r.region_ok},
          {"verdict", r.agrees ? "agree" : "disagree"}};
}

nlohmann::json to_json(const FactorizationReport& r) {
  nlohmann::json factors = nlohmann::json::array();
  for (const auto& f : r.factors)
    factors.push_back({{"name", f.name},
                       {"s", f.s},
                       {"method", f.method},
                       {"region_ok", f.region_ok},
                       {"value", f.value},
                       {"error", finite_or_null(f.error)},
                       {"rigorous", f.rigorous}});
  return {{"k", r.k},
          {"l", r.l},
          {"m", r.m},
          {"s", r.s},
          {"bound", r.bound},
          {"factors", factors},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"relative_discrepancy", r.relative_discrepancy},
          {"error_budget", finite_or_null(r.error_budget)},
          {"tol", r.tol},
          {"all_rigorous", r.all_rigorous},
          {"verdict", r.passed ? "pass" : "fail"}};
}

nlohmann::json to_json(const NonvanishingReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& w : r.rows)
    rows.push_back({{"s", w.s}, {"bound", w.bound}, {"value", w.value}, {"tail_bound", finite_or_null(w.tail_bound)},
                    {"verdict", w.verdict}});
  return {{"region_ok", r.region_ok}, {"certified", r.certified}, {"rows", rows}, {"diagnostic", r.diagnostic}};
}

}  // namespace hmf
