#include "hmf/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "hmf/charzeta.hpp"
#include "narrow_h1_data.hpp"

namespace hmf {

namespace {

std::int64_t isqrt64(std::int64_t n) {
  if (n < 0) return -1;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(std::int64_t n, std::int64_t& root) {
  if (n < 0) return false;
  root = isqrt64(n);
  return root * root == n;
}

}  // namespace

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(const QuadraticRing& ring, Rational a, Rational b)
    : ring_(ring), a_(std::move(a)), b_(std::move(b)) {
  if (ring_.degree == 1 && sgn(b_) != 0) throw PreconditionError("nonzero w-coordinate over Q");
}

FieldElement FieldElement::from_int(const QuadraticRing& ring, std::int64_t a, std::int64_t b) {
  return FieldElement(ring, make_rational(a), make_rational(b));
}

bool FieldElement::is_integral() const { return a_.get_den() == 1 && b_.get_den() == 1; }

QuadraticRing FieldElement::combine(const FieldElement& o) const {
  if (ring_ == o.ring_) return ring_;
  // Q embeds into every field; rational elements carry whichever ring.
  if (ring_.degree == 1 && is_rational()) return o.ring_;
  if (o.ring_.degree == 1 && o.is_rational()) return ring_;
  throw PreconditionError("field mismatch between elements");
}

FieldElement FieldElement::conjugate() const {
  if (ring_.degree == 1) return *this;
  if (ring_.half_omega) return FieldElement(ring_, a_ + b_, -b_);
  return FieldElement(ring_, a_, -b_);
}

Rational FieldElement::norm() const {
  if (ring_.degree == 1) return a_;
  // (a + b w)(a + b w') = a^2 + ab Tr(w) + b^2 N(w), N(w) = -omega_const
  Rational r = a_ * a_ + a_ * b_ * ring_.omega_trace() - b_ * b_ * ring_.omega_const();
  return r;
}

Rational FieldElement::trace() const {
  if (ring_.degree == 1) return a_;
  Rational r = 2 * a_ + b_ * ring_.omega_trace();
  return r;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw PreconditionError("inverse of zero");
  if (ring_.degree == 1) return FieldElement(ring_, 1 / a_);
  Rational n = norm();
  FieldElement c = conjugate();
  return FieldElement(ring_, c.a_ / n, c.b_ / n);
}

long double FieldElement::embedding(int index) const {
  long double a = a_.get_d();
  long double b = b_.get_d();
  if (ring_.degree == 1) return a;
  long double root = std::sqrt(static_cast<long double>(ring_.d));
  if (index != 0) root = -root;
  long double w = ring_.half_omega ? (1 + root) / 2 : root;
  return a + b * w;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  ring_ = combine(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  ring_ = combine(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  ring_ = combine(o);
  Rational bb = b_ * o.b_;
  Rational na = a_ * o.a_ + bb * ring_.omega_const();
  Rational nb = a_ * o.b_ + b_ * o.a_ + bb * ring_.omega_trace();
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

FieldElement FieldElement::operator-() const { return FieldElement(ring_, -a_, -b_); }

std::string FieldElement::to_string() const {
  std::ostringstream os;
  os << a_.get_str();
  if (ring_.degree == 2 && sgn(b_) != 0) {
    os << (sgn(b_) < 0 ? " - " : " + ") << Rational(abs(b_)).get_str() << "*w";
  }
  return os.str();
}

FieldElement pow(FieldElement x, unsigned exponent) {
  FieldElement r(x.ring(), 1);
  while (exponent) {
    if (exponent & 1U) r *= x;
    exponent >>= 1U;
    if (exponent) x *= x;
  }
  return r;
}

FieldElement to_element(const QuadraticRing& ring, LatticePoint p) {
  return FieldElement::from_int(ring, p.a, p.b);
}

LatticePoint to_lattice(const FieldElement& x) {
  if (!x.is_integral()) throw PreconditionError("element is not integral: " + x.to_string());
  return LatticePoint{to_int64(x.a().get_num()), to_int64(x.b().get_num())};
}

// ---------------------------------------------------------------------------
// Fields

bool is_squarefree(std::int64_t d) {
  if (d < 1) return false;
  for (std::int64_t p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

FieldElement FieldDesc::omega() const {
  if (degree == 1) return one();
  return FieldElement::from_int(ring, 0, 1);
}

FieldElement FieldDesc::totally_positive_unit() const {
  if (degree == 1) return one();
  return fund_unit_norm == -1 ? fund_unit * fund_unit : fund_unit;
}

std::string FieldDesc::describe() const {
  std::ostringstream os;
  if (degree == 1) {
    os << "field: Q\ndegree: 1\ndiscriminant: 1\n";
  } else {
    os << "field: Q(sqrt(" << d << "))\n"
       << "degree: 2\n"
       << "discriminant: " << discriminant << "\n"
       << "basis: 1, w = " << (ring.half_omega ? "(1+sqrt(d))/2" : "sqrt(d)") << "\n";
  }
  os << "different generator: " << different_gen.to_string() << "\n"
     << "fundamental unit: " << fund_unit.to_string() << "\n"
     << "fundamental unit norm: " << fund_unit_norm << "\n"
     << "narrow class number one: " << (narrow_h1 ? "yes" : "no") << "\n";
  return os.str();
}

namespace {

// Continued fraction of w = (P0 + sqrt(d))/Q0; the first convergent p/q with
// N(p - q w) = +-1 yields the fundamental unit conj(p - q w) > 1.
std::pair<FieldElement, int> fundamental_unit(const QuadraticRing& ring) {
  const std::int64_t d = ring.d;
  const std::int64_t root = isqrt64(d);
  Integer P = ring.half_omega ? 1 : 0;
  Integer Q = ring.half_omega ? 2 : 1;
  Integer p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  const FieldElement w = FieldElement::from_int(ring, 0, 1);
  for (int step = 0; step < 100000; ++step) {
    Integer a = (P + to_integer(root)) / Q;  // both positive: floor division
    Integer p = a * p_prev + p_prev2;
    Integer q = a * q_prev + q_prev2;
    FieldElement eta = FieldElement(ring, Rational(p)) - FieldElement(ring, Rational(q)) * w;
    Rational n = eta.norm();
    if (n == 1 || n == -1) {
      FieldElement unit = eta.conjugate();
      if (unit.embedding(0) < 1) unit = -unit;
      return {unit, n == 1 ? 1 : -1};
    }
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
    P = a * Q - P;
    Q = (to_integer(d) - P * P) / Q;
  }
  throw TruncationError("continued fraction did not produce a unit");
}

}  // namespace

FieldDesc make_field(std::int64_t d) {
  FieldDesc f;
  if (d == 1) {
    f.degree = 1;
    f.d = 1;
    f.discriminant = 1;
    f.ring = QuadraticRing{};
    f.different_gen = f.one();
    // O^x = {+-1}: -1 generates, has norm -1, and O^{x+} = {1} = (O^x)^2.
    f.fund_unit = FieldElement(f.ring, -1);
    f.fund_unit_norm = -1;
    f.narrow_h1 = true;
    return f;
  }
  if (!is_squarefree(d) || d < 2) {
    throw PreconditionError("d must be 1 or a squarefree integer >= 2, got " + std::to_string(d));
  }
  f.degree = 2;
  f.d = d;
  f.ring = QuadraticRing{2, d, d % 4 == 1};
  f.discriminant = f.ring.half_omega ? d : 4 * d;
  auto [unit, unit_norm] = fundamental_unit(f.ring);
  f.fund_unit = unit;
  f.fund_unit_norm = unit_norm;
  // sqrt(D) = 2w - 1 (d = 1 mod 4) or 2w; made totally positive by u when N(u) = -1.
  FieldElement root_disc = f.ring.half_omega ? FieldElement::from_int(f.ring, -1, 2)
                                             : FieldElement::from_int(f.ring, 0, 2);
  f.different_gen = unit_norm == -1 ? root_disc * unit : root_disc;
  f.narrow_h1 = check_narrow_h1(f);
  return f;
}

bool is_totally_positive(const FieldElement& x) {
  if (x.ring().degree == 1) return sgn(x.a()) > 0;
  // Both embeddings positive iff their sum and product are positive.
  return sgn(x.trace()) > 0 && sgn(x.norm()) > 0;
}

std::vector<FieldElement> enumerate_totally_positive(const FieldDesc& field,
                                                     std::int64_t trace_bound) {
  if (trace_bound < 1) throw PreconditionError("trace bound must be positive");
  std::vector<FieldElement> out;
  const auto& ring = field.ring;
  for (std::int64_t t = 1; t <= trace_bound; ++t) {
    if (field.degree == 1) {
      out.push_back(FieldElement::from_int(ring, t));
      continue;
    }
    // half: a = (t - b)/2, nu >> 0 iff d b^2 < t^2;  else: a = t/2, 4 d b^2 < t^2.
    if (ring.half_omega) {
      std::vector<FieldElement> level;
      for (std::int64_t b = -t; b <= t; ++b) {
        if (((t - b) % 2) != 0) continue;
        if (ring.d * b * b >= t * t) continue;
        level.push_back(FieldElement::from_int(ring, (t - b) / 2, b));
      }
      std::sort(level.begin(), level.end(), [](const FieldElement& x, const FieldElement& y) {
        return x.a() < y.a();
      });
      out.insert(out.end(), level.begin(), level.end());
    } else {
      if (t % 2 != 0) continue;
      for (std::int64_t b = -t; b <= t; ++b) {
        if (4 * ring.d * b * b >= t * t) continue;
        out.push_back(FieldElement::from_int(ring, t / 2, b));
      }
    }
  }
  return out;
}

FieldElement canonical_orbit_rep(const FieldDesc& field, const FieldElement& x) {
  if (!is_totally_positive(x)) throw PreconditionError("canonical_orbit_rep needs a totally positive element");
  if (field.degree == 1) return x;
  // tau_1 y >= tau_2 y  <=>  b(y) >= 0, since w - w' = sqrt(d) > 0.
  const FieldElement eta = field.totally_positive_unit();
  const FieldElement eta_inv = eta.conjugate();
  FieldElement y = x;
  while (sgn(y.b()) < 0) y *= eta;
  for (;;) {
    FieldElement z = y * eta_inv;
    if (sgn(z.b()) < 0) break;
    y = std::move(z);
  }
  return y;
}

FieldElement min_trace_orbit_rep(const FieldDesc& field, const FieldElement& x) {
  FieldElement y = canonical_orbit_rep(field, x);
  if (field.degree == 1) return y;
  FieldElement z = y * field.totally_positive_unit().conjugate();
  return z.trace() < y.trace() ? z : y;
}

// ---------------------------------------------------------------------------
// Primes and ideals

std::string to_string(SplitKind kind) {
  switch (kind) {
    case SplitKind::rational: return "rational";
    case SplitKind::split: return "split";
    case SplitKind::inert: return "inert";
    case SplitKind::ramified: return "ramified";
  }
  return "?";
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound + 1), false);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

std::vector<std::pair<std::int64_t, int>> factor_integer(std::int64_t n) {
  if (n < 1) throw PreconditionError("factor_integer needs n >= 1");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

// Totally positive element of norm `target` found by increasing trace. For a
// given trace t the norm condition pins b: d b^2 = t^2 - 4N (half basis) or
// 4 d b^2 = t^2 - 4N.
std::optional<FieldElement> search_generator(const FieldDesc& field, std::int64_t target,
                                             std::int64_t trace_limit) {
  const auto& ring = field.ring;
  for (std::int64_t t = 1; t <= trace_limit; ++t) {
    std::int64_t rem = t * t - 4 * target;
    if (rem < 0) continue;
    std::int64_t b = 0;
    if (ring.half_omega) {
      if (rem % ring.d) continue;
      if (!is_square(rem / ring.d, b)) continue;
      if (b == 0 || ((t - b) % 2) != 0) continue;
      return FieldElement::from_int(ring, (t - b) / 2, b);
    }
    if (t % 2) continue;
    if (rem % (4 * ring.d)) continue;
    if (!is_square(rem / (4 * ring.d), b) || b == 0) continue;
    return FieldElement::from_int(ring, t / 2, b);
  }
  return std::nullopt;
}

PrimeIdeal make_prime(const FieldDesc& field, std::int64_t p, std::int64_t norm,
                      const FieldElement& gen) {
  return PrimeIdeal{p, norm, to_lattice(canonical_orbit_rep(field, gen))};
}

// x / pi integral, using x / pi = x * conj(pi) / N(pi).
bool divisible(const FieldElement& x, const FieldElement& pi) {
  FieldElement q = x * pi.conjugate();
  Rational n = pi.norm();
  return FieldElement(q.ring(), q.a() / n, q.b() / n).is_integral();
}

}  // namespace

SplittingData split_prime(const FieldDesc& field, std::int64_t p) {
  if (!is_prime(p)) throw PreconditionError("split_prime needs a prime, got " + std::to_string(p));
  SplittingData out;
  if (field.degree == 1) {
    out.kind = SplitKind::rational;
    out.primes.push_back(PrimeIdeal{p, p, LatticePoint{p, 0}});
    return out;
  }
  const int k = kronecker(field.discriminant, p);
  if (k == -1) {
    out.kind = SplitKind::inert;
    out.primes.push_back(make_prime(field, p, p * p, field.one() * FieldElement(make_rational(p))));
    return out;
  }
  auto gen = search_generator(field, p, 64 * p);
  if (!gen) {
    throw TruncationError("no totally positive generator of norm " + std::to_string(p) +
                          " within trace 64p; the field may not have narrow class number one");
  }
  if (k == 0) {
    out.kind = SplitKind::ramified;
    out.primes.push_back(make_prime(field, p, p, *gen));
    return out;
  }
  out.kind = SplitKind::split;
  out.primes.push_back(make_prime(field, p, p, *gen));
  out.primes.push_back(make_prime(field, p, p, gen->conjugate()));
  std::sort(out.primes.begin(), out.primes.end());
  return out;
}

Ideal Ideal::prime(const PrimeIdeal& p, int exponent) {
  Ideal r;
  if (exponent > 0) r.factors_.emplace_back(p, exponent);
  return r;
}

std::int64_t Ideal::norm() const {
  std::int64_t n = 1;
  for (const auto& [p, e] : factors_)
    for (int i = 0; i < e; ++i) n *= p.norm;
  return n;
}

int Ideal::valuation(const PrimeIdeal& p) const {
  for (const auto& [q, e] : factors_)
    if (q == p) return e;
  return 0;
}

bool Ideal::divides(const Ideal& other) const {
  for (const auto& [p, e] : factors_)
    if (other.valuation(p) < e) return false;
  return true;
}

bool Ideal::coprime_to(const Ideal& other) const {
  for (const auto& [p, e] : factors_)
    if (other.valuation(p) > 0) return false;
  return true;
}

Ideal Ideal::gcd(const Ideal& other) const {
  Ideal r;
  for (const auto& [p, e] : factors_) {
    int m = std::min(e, other.valuation(p));
    if (m > 0) r.factors_.emplace_back(p, m);
  }
  return r;
}

Ideal Ideal::quotient(const Ideal& other) const {
  if (!other.divides(*this)) throw PreconditionError("ideal quotient of non-divisor");
  Ideal r;
  for (const auto& [p, e] : factors_) {
    int m = e - other.valuation(p);
    if (m > 0) r.factors_.emplace_back(p, m);
  }
  return r;
}

Ideal operator*(const Ideal& x, const Ideal& y) {
  std::map<PrimeIdeal, int> acc;
  for (const auto& [p, e] : x.factors_) acc[p] += e;
  for (const auto& [p, e] : y.factors_) acc[p] += e;
  Ideal r;
  r.factors_.assign(acc.begin(), acc.end());
  return r;
}

FieldElement Ideal::generator(const FieldDesc& field) const {
  FieldElement g = field.one();
  for (const auto& [p, e] : factors_) g *= pow(to_element(field.ring, p.gen), static_cast<unsigned>(e));
  return canonical_orbit_rep(field, g);
}

PrincipalIdeal Ideal::principal(const FieldDesc& field) const {
  return PrincipalIdeal{generator(field), to_integer(norm())};
}

std::string Ideal::to_string() const {
  if (factors_.empty()) return "(1)";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, e] : factors_) {
    if (!first) os << "*";
    first = false;
    os << "P" << p.norm << "[" << p.gen.a << "," << p.gen.b << "]";
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

Ideal ideal_of(const FieldDesc& field, const FieldElement& x) {
  if (x.is_zero() || !x.is_integral()) throw PreconditionError("ideal_of needs a nonzero integral element");
  Rational n = abs(x.norm());
  const std::int64_t norm = to_int64(n.get_num());
  Ideal r;
  for (const auto& [p, e] : factor_integer(norm)) {
    SplittingData data = split_prime(field, p);
    switch (data.kind) {
      case SplitKind::rational:
      case SplitKind::ramified:
        r = r * Ideal::prime(data.primes[0], e);
        break;
      case SplitKind::inert:
        r = r * Ideal::prime(data.primes[0], e / 2);
        break;
      case SplitKind::split: {
        const FieldElement pi = to_element(field.ring, data.primes[0].gen);
        int v = 0;
        FieldElement y = x;
        while (v < e && divisible(y, pi)) {
          y = y / pi;
          ++v;
        }
        r = r * Ideal::prime(data.primes[0], v) * Ideal::prime(data.primes[1], e - v);
        break;
      }
    }
  }
  return r;
}

Ideal ideal_of(const FieldDesc& field, const PrincipalIdeal& ideal) { return ideal_of(field, ideal.gen); }

std::vector<Ideal> divisors(const Ideal& ideal) {
  std::vector<Ideal> out{Ideal{}};
  for (const auto& [p, e] : ideal.factors()) {
    std::vector<Ideal> next;
    for (const auto& base : out)
      for (int i = 0; i <= e; ++i) next.push_back(base * Ideal::prime(p, i));
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PrincipalIdeal> divisors(const FieldDesc& field, const PrincipalIdeal& ideal) {
  std::vector<PrincipalIdeal> out;
  for (const auto& div : divisors(ideal_of(field, ideal))) out.push_back(div.principal(field));
  return out;
}

std::vector<Ideal> ideals_up_to(const FieldDesc& field, std::int64_t norm_bound) {
  std::vector<PrimeIdeal> primes;
  for (std::int64_t p : primes_up_to(norm_bound)) {
    for (const auto& q : split_prime(field, p).primes)
      if (q.norm <= norm_bound) primes.push_back(q);
  }
  std::sort(primes.begin(), primes.end());
  std::vector<Ideal> out;
  // Depth-first over exponent vectors with nondecreasing prime index.
  std::function<void(std::size_t, const Ideal&, std::int64_t)> walk =
      [&](std::size_t start, const Ideal& current, std::int64_t norm) {
        out.push_back(current);
        for (std::size_t i = start; i < primes.size(); ++i) {
          if (norm > norm_bound / primes[i].norm) break;
          walk(i, current * Ideal::prime(primes[i]), norm * primes[i].norm);
        }
      };
  walk(0, Ideal{}, 1);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Narrow class number one

std::pair<std::vector<std::int64_t>, std::int64_t> parse_narrow_h1_list(const std::string& text) {
  std::vector<std::int64_t> values;
  std::int64_t bound = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    line = line.substr(start);
    if (line[0] == '#') {
      const std::string key = "# bound:";
      if (line.rfind(key, 0) == 0) bound = std::stoll(line.substr(key.size()));
      continue;
    }
    values.push_back(std::stoll(line));
  }
  std::sort(values.begin(), values.end());
  return {values, bound};
}

namespace {
const std::pair<std::vector<std::int64_t>, std::int64_t>& embedded_list() {
  static const auto parsed = parse_narrow_h1_list(detail::kNarrowH1Data);
  return parsed;
}
}  // namespace

const std::vector<std::int64_t>& narrow_h1_list() { return embedded_list().first; }
std::int64_t narrow_h1_list_bound() { return embedded_list().second; }

bool check_narrow_h1(const FieldDesc& field) {
  if (field.degree == 1) return true;
  if (field.fund_unit_norm != -1) return false;
  const auto& list = narrow_h1_list();
  return std::binary_search(list.begin(), list.end(), field.d);
}

}  // namespace hmf
