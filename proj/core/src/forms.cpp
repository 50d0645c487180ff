#include "hmf/forms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <nlohmann/json.hpp>
#include <set>

#include "hmf/charzeta.hpp"

namespace hmf {

std::string to_string(FormKind kind) {
  switch (kind) {
    case FormKind::cusp: return "cusp";
    case FormKind::eisenstein: return "eisenstein";
    case FormKind::other: return "other";
  }
  return "?";
}

std::string to_string(HeckeStatus status) {
  switch (status) {
    case HeckeStatus::consistent: return "consistent";
    case HeckeStatus::violated: return "violated";
    case HeckeStatus::not_normalizable: return "not-normalizable";
  }
  return "?";
}

const Rational& HeckeTable::at(const Ideal& n) const {
  auto it = values.find(n);
  if (it == values.end())
    throw TruncationError("ideal " + n.to_string() + " beyond table norm bound " + std::to_string(norm_bound));
  return it->second;
}

Integer sigma(const Ideal& n, int exponent) {
  if (exponent < 0) throw PreconditionError("sigma needs a non-negative exponent");
  Integer s = 1;
  for (const auto& [p, e] : n.factors()) {
    Integer q = ipow(to_integer(p.norm), static_cast<unsigned long>(exponent));
    Integer acc = 1, pw = 1;
    for (int j = 0; j < e; ++j) {
      pw *= q;
      acc += pw;
    }
    s *= acc;
  }
  return s;
}

namespace {

int parallel_weight(const FourierExpansion& f) {
  if (!f.weight().is_parallel()) throw PreconditionError("operation needs parallel weight");
  return f.weight().k0();
}

// sqrt(eta_1) + 1/sqrt(eta_1): the largest Tr/sqrt(N) over least-trace orbit reps.
long double orbit_trace_factor(const FieldDesc& field) {
  if (field.degree == 1) return 1.0L;
  long double e = field.totally_positive_unit().embedding(0);
  return std::sqrt(e) + 1.0L / std::sqrt(e);
}

LatticePoint lookup_key(const FieldDesc& field, const Ideal& n) {
  return to_lattice(min_trace_orbit_rep(field, n.generator(field)));
}

Rational rational_value(const FieldElement& v) {
  if (!v.is_rational()) throw PreconditionError("Hecke coefficient is irrational: " + v.to_string());
  return v.a();
}

}  // namespace

FourierExpansion eisenstein(const FieldDesc& field, int k, std::int64_t trace_bound) {
  if (k < 2 || k % 2 != 0) throw PreconditionError("Eisenstein weight must be even and >= 2");
  if (field.degree == 1 && k < 4) throw PreconditionError("E_2 over Q is not holomorphic; need k >= 4");
  if (!field.narrow_h1) throw PreconditionError("field does not have narrow class number one");
  Rational c0 = zeta_special(field, k) / (field.degree == 1 ? 2 : 4);
  FourierExpansion f(field, WeightVector::parallel(field.degree, k), trace_bound, FieldElement(field.ring, c0));
  for (std::size_t i = 0; i < f.size(); ++i) {
    Ideal n = ideal_of(field, to_element(field.ring, f.box().key(i)));
    f.set_at(i, Rational(sigma(n, k - 1)));
  }
  return f;
}

std::int64_t covered_norm_bound(const FieldDesc& field, std::int64_t trace_bound) {
  if (field.degree == 1) return trace_bound;
  long double x = static_cast<long double>(trace_bound) / orbit_trace_factor(field);
  return static_cast<std::int64_t>(std::floor(x * x * (1.0L - 1e-12L)));
}

std::int64_t trace_bound_for_norm(const FieldDesc& field, std::int64_t norm_bound) {
  if (norm_bound < 1) throw PreconditionError("norm bound must be positive");
  if (field.degree == 1) return norm_bound;
  auto t = static_cast<std::int64_t>(std::ceil(orbit_trace_factor(field) * std::sqrt(static_cast<long double>(norm_bound))));
  while (covered_norm_bound(field, t) < norm_bound) ++t;
  return t;
}

Rational hecke_coeff(const FourierExpansion& f, const Ideal& n) {
  parallel_weight(f);
  return rational_value(f.coefficient(lookup_key(f.field(), n)));
}

Rational hecke_coeff(const FourierExpansion& f, const PrincipalIdeal& n) {
  return hecke_coeff(f, ideal_of(f.field(), n));
}

FourierExpansion hecke_operator(const FourierExpansion& f, const Ideal& n) {
  const int k = parallel_weight(f);
  const FieldDesc& field = f.field();
  const TraceBox& box = f.box();
  std::vector<Rational> values(box.size());
  std::size_t done = 0;
  std::int64_t complete_trace = 0;
  try {
    for (std::int64_t t = 1; t <= f.trace_bound(); ++t) {
      for (std::size_t i = box.offset(t); i < box.offset(t + 1); ++i) {
        Ideal m = ideal_of(field, to_element(field.ring, box.key(i)));
        Ideal mn = m * n;
        Rational acc = 0;
        for (const Ideal& a : divisors(m.gcd(n))) {
          Ideal q = mn.quotient(a * a);
          acc += Rational(ipow(to_integer(a.norm()), static_cast<unsigned long>(k - 1))) * hecke_coeff(f, q);
        }
        values[i] = std::move(acc);
      }
      done = box.offset(t + 1);
      complete_trace = t;
    }
  } catch (const TruncationError&) {
  }
  if (complete_trace < 1)
    throw TruncationError("trace bound " + std::to_string(f.trace_bound()) + " too small for T_" + n.to_string());
  FieldElement c0 = f.const_term() * FieldElement(field.ring, Rational(sigma(n, k - 1)));
  FourierExpansion r(field, f.weight(), complete_trace, c0, f.twopi_power());
  for (std::size_t i = 0; i < done; ++i) r.set_at(i, std::move(values[i]));
  return r;
}

FourierExpansion hecke_operator(const FourierExpansion& f, const PrincipalIdeal& n) {
  return hecke_operator(f, ideal_of(f.field(), n));
}

HeckeTable hecke_table(const FourierExpansion& f, std::int64_t norm_bound, FormKind kind, const std::string& id,
                       bool normalize) {
  HeckeTable table;
  table.id = id;
  table.field = f.field();
  table.weight = parallel_weight(f);
  table.kind = kind;
  table.norm_bound = norm_bound;
  Rational scale = 1;
  if (normalize) {
    Rational c1 = hecke_coeff(f, Ideal{});
    if (sgn(c1) == 0) throw PreconditionError("form " + id + " has c((1)) = 0 and cannot be normalized");
    scale = 1 / c1;
  }
  table.normalized = normalize;
  for (const Ideal& n : ideals_up_to(f.field(), norm_bound)) table.values.emplace(n, scale * hecke_coeff(f, n));
  return table;
}

HeckeTable eisenstein_table(const FieldDesc& field, int k, std::int64_t norm_bound) {
  HeckeTable table;
  table.id = "E" + std::to_string(k);
  table.field = field;
  table.weight = k;
  table.kind = FormKind::eisenstein;
  table.normalized = true;
  table.norm_bound = norm_bound;
  for (const Ideal& n : ideals_up_to(field, norm_bound)) table.values.emplace(n, Rational(sigma(n, k - 1)));
  return table;
}

HeckeTable ones_table(const FieldDesc& field, std::int64_t norm_bound) {
  HeckeTable table;
  table.id = "one";
  table.field = field;
  table.weight = 0;
  table.kind = FormKind::other;
  table.normalized = true;
  table.norm_bound = norm_bound;
  for (const Ideal& n : ideals_up_to(field, norm_bound)) table.values.emplace(n, Rational(1));
  return table;
}

HeckeReport eigencheck(const FourierExpansion& f, std::int64_t norm_bound) {
  const int k = parallel_weight(f);
  HeckeReport report;
  const std::int64_t B = std::min(norm_bound, covered_norm_bound(f.field(), f.trace_bound()));
  report.tested_bound = B;
  if (B < 1) throw TruncationError("trace bound too small for any Hecke coefficient");
  if (sgn(hecke_coeff(f, Ideal{})) == 0) {
    report.status = HeckeStatus::not_normalizable;
    return report;
  }
  const HeckeTable table = hecke_table(f, B, FormKind::other, "f", true);
  std::vector<std::pair<Ideal, Rational>> entries(table.values.begin(), table.values.end());

  for (std::size_t i = 1; i < entries.size(); ++i) {
    const auto& [m, cm] = entries[i];
    const std::int64_t limit = B / m.norm();
    for (std::size_t j = i + 1; j < entries.size() && entries[j].first.norm() <= limit; ++j) {
      const auto& [n, cn] = entries[j];
      if (!m.coprime_to(n)) continue;
      ++report.multiplicativity_checks;
      Rational lhs = cm * cn;
      const Rational& rhs = table.at(m * n);
      if (lhs != rhs) report.witnesses.push_back({"multiplicativity", m, n, lhs, rhs});
    }
  }

  for (const auto& [p, cp] : entries) {
    if (p.factors().size() != 1 || p.factors()[0].second != 1) continue;
    const PrimeIdeal& prime = p.factors()[0].first;
    const Rational scale(ipow(to_integer(prime.norm), static_cast<unsigned long>(k - 1)));
    Ideal prev{};
    Ideal cur = p;
    for (int r = 1;; ++r) {
      Ideal next = cur * p;
      if (next.norm() > B) break;
      ++report.recurrence_checks;
      Rational lhs = cp * table.at(cur);
      Rational rhs = table.at(next) + scale * table.at(prev);
      if (lhs != rhs) report.witnesses.push_back({"prime-power", p, cur, lhs, rhs});
      prev = cur;
      cur = next;
    }
  }
  report.status = report.witnesses.empty() ? HeckeStatus::consistent : HeckeStatus::violated;
  return report;
}

FourierExpansion normalize(const FourierExpansion& f) {
  FieldElement c1 = f.coefficient(LatticePoint{1, 0});
  if (c1.is_zero()) throw PreconditionError("coefficient at 1 vanishes; cannot normalize");
  return scalar_mul(c1.inverse(), f);
}

// ---------------------------------------------------------------------------
// Linear algebra

namespace {

using Row = std::vector<Rational>;

std::int64_t common_trace_bound(const std::vector<FourierExpansion>& forms) {
  if (forms.empty()) throw PreconditionError("empty family of expansions");
  std::int64_t T = forms.front().trace_bound();
  for (const auto& f : forms) {
    if (f.field().d != forms.front().field().d) throw PreconditionError("expansions over different fields");
    if (!(f.weight() == forms.front().weight())) throw PreconditionError("expansions of different weights");
    if (f.twopi_power() != forms.front().twopi_power()) throw PreconditionError("2 pi i scale mismatch");
    T = std::min(T, f.trace_bound());
  }
  return T;
}

Row coordinates(const FourierExpansion& f, std::size_t n) {
  Row r;
  r.reserve(2 * n + 2);
  r.push_back(f.const_term().a());
  r.push_back(f.const_term().b());
  for (std::size_t i = 0; i < n; ++i) {
    r.push_back(f.coeff_a(i));
    r.push_back(f.coeff_b(i));
  }
  return r;
}

FourierExpansion from_coordinates(const FourierExpansion& shape, std::int64_t T, const Row& r) {
  FourierExpansion f(shape.field(), shape.weight(), T, FieldElement(shape.field().ring, r[0], r[1]),
                     shape.twopi_power());
  for (std::size_t i = 0; i < f.size(); ++i) f.set_at(i, r[2 + 2 * i], r[3 + 2 * i]);
  return f;
}

// Row-reduces `rows` on the first `width` columns; later columns ride along.
// Returns the pivot column of each row that ended up nonzero, in order.
std::vector<std::size_t> rref(std::vector<Row>& rows, std::size_t width) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < width && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && sgn(rows[sel][c]) == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational factor = rows[i][c];
      for (std::size_t j = c; j < rows[i].size(); ++j)
        if (sgn(rows[r][j]) != 0) rows[i][j] -= factor * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

SpanResult span_rank(const std::vector<FourierExpansion>& forms) {
  const std::int64_t T = common_trace_bound(forms);
  const std::size_t n = TraceBox(forms.front().field().ring, T).size();
  const std::size_t width = 2 * n + 2;
  std::vector<Row> rows;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    Row r = coordinates(forms[i], n);
    for (std::size_t j = 0; j < forms.size(); ++j) r.push_back(Rational(i == j ? 1 : 0));
    rows.push_back(std::move(r));
  }
  SpanResult out;
  out.rank = rref(rows, width).size();
  for (std::size_t i = out.rank; i < rows.size(); ++i) out.kernel.emplace_back(rows[i].begin() + static_cast<long>(width), rows[i].end());
  return out;
}

std::vector<FourierExpansion> span_basis(const std::vector<FourierExpansion>& forms) {
  const std::int64_t T = common_trace_bound(forms);
  const std::size_t n = TraceBox(forms.front().field().ring, T).size();
  std::vector<Row> rows;
  for (const auto& f : forms) rows.push_back(coordinates(f, n));
  const std::size_t rank = rref(rows, 2 * n + 2).size();
  std::vector<FourierExpansion> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(from_coordinates(forms.front(), T, rows[i]));
  return out;
}

std::vector<FourierExpansion> construct_cusp_space(const std::vector<FourierExpansion>& generators) {
  if (generators.empty()) throw PreconditionError("empty span");
  // In echelon form only rows pivoting on a constant-term column are non-cuspidal.
  std::vector<FourierExpansion> out;
  for (auto& f : span_basis(generators))
    if (f.const_term().is_zero()) out.push_back(std::move(f));
  return out;
}

std::vector<FourierExpansion> eisenstein_monomials(const FieldDesc& field, int k, std::int64_t trace_bound) {
  std::vector<int> parts;
  for (int j = field.degree == 1 ? 4 : 2; j <= k; j += 2) parts.push_back(j);
  std::map<int, FourierExpansion> eis;
  for (int j : parts) eis.emplace(j, eisenstein(field, j, trace_bound));
  std::vector<FourierExpansion> out;
  std::vector<int> current;
  std::function<void(std::size_t, int)> walk = [&](std::size_t start, int remaining) {
    if (remaining == 0) {
      FourierExpansion prod = eis.at(current[0]);
      for (std::size_t i = 1; i < current.size(); ++i) prod = multiply(prod, eis.at(current[i]));
      out.push_back(std::move(prod));
      return;
    }
    for (std::size_t i = start; i < parts.size(); ++i) {
      if (parts[i] > remaining) break;
      current.push_back(parts[i]);
      walk(i, remaining - parts[i]);
      current.pop_back();
    }
  };
  walk(0, k);
  return out;
}

namespace {

std::vector<Rational> charpoly(const std::vector<Row>& A) {
  // Faddeev-LeVerrier: c_n = 1, M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
  const std::size_t n = A.size();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  std::vector<Row> M(n, Row(n, Rational(0)));
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<Row> next(n, Row(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) s += A[i][l] * M[l][j];
        next[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] += c[n - k + 1];
    M = std::move(next);
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += A[i][l] * M[l][i];
    c[n - k] = -tr / static_cast<long>(k);
  }
  return c;
}

Rational eval_poly(const std::vector<Rational>& c, const Rational& x) {
  Rational r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

std::vector<std::complex<long double>> numeric_roots(const std::vector<Rational>& c) {
  const std::size_t n = c.size() - 1;
  std::vector<std::complex<long double>> z(n);
  const std::complex<long double> seed(0.4L, 0.9L);
  long double radius = 1;
  for (const auto& q : c) radius = std::max(radius, 1 + std::fabs(static_cast<long double>(q.get_d())));
  for (std::size_t i = 0; i < n; ++i) z[i] = radius * std::pow(seed, static_cast<int>(i));
  auto eval = [&](std::complex<long double> x) {
    std::complex<long double> r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + static_cast<long double>(c[i].get_d());
    return r;
  };
  for (int it = 0; it < 2000; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<long double> den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      z[i] -= eval(z[i]) / den;
    }
  }
  return z;
}

std::string poly_string(const std::vector<Rational>& c) {
  std::string s;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (sgn(c[i]) == 0) continue;
    if (!s.empty()) s += sgn(c[i]) > 0 ? " + " : " - ";
    else if (sgn(c[i]) < 0) s += "-";
    Rational a = abs(c[i]);
    if (a != 1 || i == 0) s += a.get_str();
    if (i > 0) s += (a != 1 ? "*" : std::string()) + "x" + (i > 1 ? "^" + std::to_string(i) : std::string());
  }
  return s.empty() ? "0" : s;
}

}  // namespace

EigenbasisResult eigenbasis(const std::vector<FourierExpansion>& subspace, const Ideal& p) {
  if (subspace.empty()) throw PreconditionError("empty subspace");
  if (subspace.size() > 4) throw PreconditionError("eigenbasis supports dimension at most 4");
  const std::size_t r = subspace.size();
  EigenbasisResult out;
  if (span_rank(subspace).rank != r) throw PreconditionError("subspace generators are linearly dependent");

  std::vector<FourierExpansion> images;
  std::int64_t T = common_trace_bound(subspace);
  for (const auto& g : subspace) {
    images.push_back(hecke_operator(g, p));
    T = std::min(T, images.back().trace_bound());
  }
  const std::size_t n = TraceBox(subspace.front().field().ring, T).size();
  const std::size_t width = 2 * n + 2;
  std::vector<Row> rows;
  for (std::size_t i = 0; i < r; ++i) {
    Row row = coordinates(truncate(subspace[i], T), n);
    for (std::size_t j = 0; j < r; ++j) row.push_back(Rational(i == j ? 1 : 0));
    rows.push_back(std::move(row));
  }
  const auto pivots = rref(rows, width);
  if (pivots.size() != r) throw TruncationError("basis becomes dependent at the Hecke image trace bound");

  std::vector<Row> M(r, Row(r, Rational(0)));
  for (std::size_t i = 0; i < r; ++i) {
    Row w = coordinates(truncate(images[i], T), n);
    Row y(r, Rational(0));
    for (std::size_t j = 0; j < r; ++j) {
      y[j] = w[pivots[j]];
      if (sgn(y[j]) == 0) continue;
      for (std::size_t c = 0; c < width; ++c) w[c] -= y[j] * rows[j][c];
    }
    if (std::any_of(w.begin(), w.end(), [](const Rational& q) { return sgn(q) != 0; }))
      throw PreconditionError("span is not stable under T_" + p.to_string());
    // T g_i = sum_j y_j (row_j) and row_j = sum_l P_jl g_l
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t l = 0; l < r; ++l) M[i][l] += y[j] * rows[j][width + l];
  }

  out.charpoly = charpoly(M);
  bool integral = std::all_of(out.charpoly.begin(), out.charpoly.end(),
                              [](const Rational& q) { return q.get_den() == 1; });
  std::set<Integer> roots;
  if (integral) {
    for (const auto& z : numeric_roots(out.charpoly)) {
      Integer cand(static_cast<double>(std::round(z.real())));
      for (int delta = -1; delta <= 1; ++delta) {
        Integer x = cand + delta;
        if (sgn(eval_poly(out.charpoly, Rational(x))) == 0) roots.insert(x);
      }
    }
  }
  if (roots.size() != r) {
    out.split = false;
    out.diagnostic = "characteristic polynomial of T_" + p.to_string() + " is " + poly_string(out.charpoly) +
                     "; it does not split into distinct rational roots";
    return out;
  }
  out.split = true;
  for (const Integer& lambda : roots) {
    // left eigenvector: v M = lambda v, i.e. (M^T - lambda I) v = 0
    std::vector<Row> sys(r, Row(r, Rational(0)));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) sys[i][j] = M[j][i] - (i == j ? Rational(lambda) : Rational(0));
    auto piv = rref(sys, r);
    Row v(r, Rational(0));
    std::size_t free = 0;
    while (std::find(piv.begin(), piv.end(), free) != piv.end()) ++free;
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -sys[i][free];
    FourierExpansion f = scalar_mul(v[0], subspace[0]);
    for (std::size_t i = 1; i < r; ++i) f = add(f, scalar_mul(v[i], subspace[i]));
    out.eigenvalues.push_back(lambda);
    out.eigenforms.push_back(normalize(f));
  }
  return out;
}

ScanReport scan_equal_weight_brackets(const FieldDesc& field, int k_max, int m, std::int64_t norm_bound) {
  if (k_max % 2 != 0) throw PreconditionError("k_max must be even");
  if (m != 1 && m != 2) throw PreconditionError("scan supports m in {1, 2}");
  ScanReport report;
  report.m = m;
  const std::int64_t T = trace_bound_for_norm(field, norm_bound);
  for (int k = field.degree == 1 ? 4 : 2; k <= k_max; k += 2) {
    FourierExpansion e = eisenstein(field, k, T);
    FourierExpansion b = rc_bracket(e, e, m);
    ScanRow row;
    row.k = k;
    row.bracket_zero = b.is_zero();
    if (field.degree % 2 == 1 && m == 1) {
      report.odd_degree_identity_checked = true;
      report.odd_degree_identity_holds = report.odd_degree_identity_holds && row.bracket_zero;
    }
    row.report = eigencheck(b, norm_bound);
    if (row.report.status == HeckeStatus::consistent) report.largest_consistent_k = k;
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {

DeskInstance evaluate_instance(DeskInstance inst, const FourierExpansion& form, const FieldDesc& field,
                               std::int64_t T, std::int64_t norm_bound) {
  inst.target_weight = form.weight().k0();
  inst.cusp_rank = construct_cusp_space(eisenstein_monomials(field, inst.target_weight, T)).size();
  inst.hypothesis_met = inst.cusp_rank >= inst.required_rank;
  inst.report = eigencheck(form, norm_bound);
  const std::string rank = "cusp span rank " + std::to_string(inst.cusp_rank);
  if (inst.hypothesis_met) {
    inst.branch = rank + " >= " + std::to_string(inst.required_rank) + ": hypothesis met, non-eigenform predicted";
    inst.as_expected = inst.report.status == HeckeStatus::violated;
  } else {
    inst.branch = rank + " < " + std::to_string(inst.required_rank) +
                  ": hypothesis not met, dimension reason (proportional to an eigenform if the span is the full space)";
    inst.as_expected = true;
  }
  return inst;
}

}  // namespace

DeskInstance desk_instance_eisenstein_times_cusp(const FieldDesc& field, std::int64_t norm_bound) {
  if (field.degree != 2) throw PreconditionError("desk instance needs a real quadratic field");
  const std::int64_t T = trace_bound_for_norm(field, norm_bound);
  FourierExpansion e2 = eisenstein(field, 2, T);
  FourierExpansion e6 = eisenstein(field, 6, T);
  auto cusp = construct_cusp_space({multiply(multiply(e2, e2), e2), e6});
  if (cusp.size() != 1) throw PreconditionError("span{E2^3, E6} does not contain exactly one cusp form");
  FourierExpansion s6 = normalize(cusp[0]);
  DeskInstance inst;
  inst.label = "E4 * s6 (Eisenstein series times cusp eigenform)";
  inst.required_rank = 2;
  return evaluate_instance(std::move(inst), multiply(eisenstein(field, 4, T), s6), field, T, norm_bound);
}

DeskInstance desk_instance_eisenstein_bracket(const FieldDesc& field, int m, std::int64_t norm_bound) {
  if (field.degree != 2) throw PreconditionError("desk instance needs a real quadratic field");
  const std::int64_t T = trace_bound_for_norm(field, norm_bound);
  DeskInstance inst;
  inst.label = "[E2, E4]_" + std::to_string(m) + " (bracket of Eisenstein series)";
  inst.required_rank = m > 0 ? 2 : 1;
  return evaluate_instance(std::move(inst), rc_bracket(eisenstein(field, 2, T), eisenstein(field, 4, T), m), field, T,
                           norm_bound);
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const HeckeReport& report) {
  nlohmann::json w = nlohmann::json::array();
  for (const auto& x : report.witnesses)
    w.push_back({{"relation", x.relation},
                 {"m", x.m.to_string()},
                 {"n", x.n.to_string()},
                 {"norm_m", x.m.norm()},
                 {"norm_n", x.n.norm()},
                 {"lhs", to_fraction_string(x.lhs)},
                 {"rhs", to_fraction_string(x.rhs)}});
  return {{"status", to_string(report.status)},
          {"tested_bound", report.tested_bound},
          {"multiplicativity_checks", report.multiplicativity_checks},
          {"recurrence_checks", report.recurrence_checks},
          {"witnesses", w}};
}

nlohmann::json to_json(const ScanReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"k", r.k},
                    {"bracket_zero", r.bracket_zero},
                    {"status", to_string(r.report.status)},
                    {"witnesses", r.report.witnesses.size()},
                    {"tested_bound", r.report.tested_bound}});
  nlohmann::json doc = {{"m", report.m}, {"rows", rows}};
  if (report.odd_degree_identity_checked) doc["odd_degree_identity_holds"] = report.odd_degree_identity_holds;
  doc["largest_consistent_k"] = report.largest_consistent_k ? nlohmann::json(*report.largest_consistent_k) : nlohmann::json();
  return doc;
}

nlohmann::json to_json(const DeskInstance& inst) {
  return {{"label", inst.label},         {"target_weight", inst.target_weight},
          {"cusp_rank", inst.cusp_rank}, {"required_rank", inst.required_rank},
          {"hypothesis_met", inst.hypothesis_met}, {"branch", inst.branch},
          {"as_expected", inst.as_expected}, {"report", to_json(inst.report)}};
}

}  // namespace hmf
