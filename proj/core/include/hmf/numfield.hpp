#pragma once

// Exact arithmetic in Q and real quadratic fields Q(sqrt(d)).
//
// Elements are stored as rational coordinates over the integral basis
// {1, w} with w = (1 + sqrt(d))/2 for d = 1 mod 4 and w = sqrt(d) otherwise.
// The first real embedding is the inclusion, the second is conjugation.

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hmf/rational.hpp"

namespace hmf {

/// Multiplication data for the basis {1, w}: w^2 = omega_trace * w + omega_const.
struct QuadraticRing {
  int degree = 1;
  std::int64_t d = 1;
  bool half_omega = false;

  std::int64_t omega_trace() const { return half_omega ? 1 : 0; }
  std::int64_t omega_const() const { return half_omega ? (d - 1) / 4 : d; }

  friend bool operator==(const QuadraticRing&, const QuadraticRing&) = default;
};

class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(Rational a) : a_(std::move(a)) {}
  FieldElement(const QuadraticRing& ring, Rational a, Rational b = 0);

  static FieldElement from_int(const QuadraticRing& ring, std::int64_t a, std::int64_t b = 0);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const QuadraticRing& ring() const { return ring_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }
  bool is_integral() const;

  FieldElement conjugate() const;
  Rational norm() const;
  Rational trace() const;
  FieldElement inverse() const;

  /// tau_1 (index 0) or tau_2 (index 1) as a floating value.
  long double embedding(int index) const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);

  friend FieldElement operator+(FieldElement x, const FieldElement& y) { return x += y; }
  friend FieldElement operator-(FieldElement x, const FieldElement& y) { return x -= y; }
  friend FieldElement operator*(FieldElement x, const FieldElement& y) { return x *= y; }
  friend FieldElement operator/(const FieldElement& x, const FieldElement& y) {
    return x * y.inverse();
  }
  FieldElement operator-() const;

  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  std::string to_string() const;

 private:
  QuadraticRing combine(const FieldElement& o) const;

  QuadraticRing ring_{};
  Rational a_{0};
  Rational b_{0};
};

FieldElement pow(FieldElement x, unsigned exponent);

/// An integral element with small coordinates; used as a coefficient key.
struct LatticePoint {
  std::int64_t a = 0;
  std::int64_t b = 0;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

FieldElement to_element(const QuadraticRing& ring, LatticePoint p);
/// Throws PreconditionError for non-integral input or coordinates beyond int64.
LatticePoint to_lattice(const FieldElement& x);

struct LatticePointHash {
  std::size_t operator()(const LatticePoint& p) const noexcept {
    return std::hash<std::int64_t>{}(p.a * 1000003 + p.b);
  }
};

struct FieldDesc {
  int degree = 1;
  std::int64_t d = 1;
  std::int64_t discriminant = 1;
  QuadraticRing ring{};
  FieldElement different_gen;
  FieldElement fund_unit;
  int fund_unit_norm = -1;
  bool narrow_h1 = true;

  FieldElement omega() const;
  FieldElement one() const { return FieldElement(ring, 1); }
  /// Generator of the totally positive units: u^2 when N(u) = -1, u otherwise.
  FieldElement totally_positive_unit() const;

  std::string describe() const;
};

/// d = 1 gives Q. Otherwise d must be squarefree, d >= 2.
FieldDesc make_field(std::int64_t d);

bool is_squarefree(std::int64_t d);

bool is_totally_positive(const FieldElement& x);

/// All nu in O with nu >> 0 and Tr(nu) <= trace_bound, ordered by (trace, a, b).
std::vector<FieldElement> enumerate_totally_positive(const FieldDesc& field,
                                                     std::int64_t trace_bound);

/// The element of the orbit x * O^{x+} with tau_1/tau_2 in [1, ratio(eta))
/// where eta generates O^{x+}. Identity in degree 1.
FieldElement canonical_orbit_rep(const FieldDesc& field, const FieldElement& x);

/// Orbit element of least trace (ties resolved towards the canonical rep).
FieldElement min_trace_orbit_rep(const FieldDesc& field, const FieldElement& x);

// ---------------------------------------------------------------------------
// Ideals. In a field with narrow class number one every integral ideal is
// principal with a totally positive generator, unique up to O^{x+}.

struct PrincipalIdeal {
  FieldElement gen;  // canonical totally positive generator
  Integer norm;
  friend bool operator==(const PrincipalIdeal& x, const PrincipalIdeal& y) {
    return x.norm == y.norm && x.gen == y.gen;
  }
};

enum class SplitKind { rational, split, inert, ramified };

std::string to_string(SplitKind kind);

struct PrimeIdeal {
  std::int64_t p = 0;      // rational prime below
  std::int64_t norm = 0;   // p or p^2
  LatticePoint gen;        // canonical generator
  friend auto operator<=>(const PrimeIdeal& x, const PrimeIdeal& y) {
    if (auto c = x.norm <=> y.norm; c != 0) return c;
    return x.gen <=> y.gen;
  }
  friend bool operator==(const PrimeIdeal&, const PrimeIdeal&) = default;
};

struct SplittingData {
  SplitKind kind = SplitKind::rational;
  std::vector<PrimeIdeal> primes;  // sorted
};

/// Decided by the Kronecker symbol (D/p); generators found by a trace scan
/// bounded by 64 p. Throws TruncationError if the scan finds nothing.
SplittingData split_prime(const FieldDesc& field, std::int64_t p);

/// An integral ideal stored by its prime factorization.
class Ideal {
 public:
  Ideal() = default;  // the unit ideal
  static Ideal prime(const PrimeIdeal& p, int exponent = 1);

  const std::vector<std::pair<PrimeIdeal, int>>& factors() const { return factors_; }
  std::int64_t norm() const;
  bool is_unit() const { return factors_.empty(); }
  int valuation(const PrimeIdeal& p) const;

  bool divides(const Ideal& other) const;
  bool coprime_to(const Ideal& other) const;
  Ideal gcd(const Ideal& other) const;
  /// Requires other | *this.
  Ideal quotient(const Ideal& other) const;

  friend Ideal operator*(const Ideal& x, const Ideal& y);
  friend auto operator<=>(const Ideal& x, const Ideal& y) {
    if (auto c = x.norm() <=> y.norm(); c != 0) return c;
    return x.factors_ <=> y.factors_;
  }
  friend bool operator==(const Ideal&, const Ideal&) = default;

  /// Canonical totally positive generator.
  FieldElement generator(const FieldDesc& field) const;
  PrincipalIdeal principal(const FieldDesc& field) const;

  std::string to_string() const;

 private:
  std::vector<std::pair<PrimeIdeal, int>> factors_;
};

/// Factorization of the principal ideal (x), x a nonzero integral element.
Ideal ideal_of(const FieldDesc& field, const FieldElement& x);
Ideal ideal_of(const FieldDesc& field, const PrincipalIdeal& ideal);

/// All integral divisors of an ideal, sorted by (norm, generator).
std::vector<PrincipalIdeal> divisors(const FieldDesc& field, const PrincipalIdeal& ideal);
std::vector<Ideal> divisors(const Ideal& ideal);

/// Every integral ideal with norm <= bound, sorted.
std::vector<Ideal> ideals_up_to(const FieldDesc& field, std::int64_t norm_bound);

/// True for Q and for d in the curated narrow class number one list.
bool check_narrow_h1(const FieldDesc& field);

/// The curated list compiled into the library, and its bound (exclusive).
const std::vector<std::int64_t>& narrow_h1_list();
std::int64_t narrow_h1_list_bound();
/// Parses a list file: '#' comments, one integer per line, "# bound: N" header.
std::pair<std::vector<std::int64_t>, std::int64_t> parse_narrow_h1_list(const std::string& text);

/// Rational primes <= bound.
std::vector<std::int64_t> primes_up_to(std::int64_t bound);
std::vector<std::pair<std::int64_t, int>> factor_integer(std::int64_t n);

}  // namespace hmf
