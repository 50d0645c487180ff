#pragma once

// Truncated Fourier expansions f = a(0) + sum_{nu >> 0} a(nu) e(Tr(nu z)).
//
// Coefficients live on the finite box of totally positive integers of trace
// at most trace_bound; every value inside the box is known exactly, values
// outside are unknown. The stored series represents (2 pi i)^twopi_power
// times the actual form.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hmf/numfield.hpp"
#include "hmf/rational.hpp"

namespace hmf {

struct WeightVector {
  std::vector<int> components;

  static WeightVector parallel(int degree, int k);

  int degree() const { return static_cast<int>(components.size()); }
  bool is_parallel() const;
  int k0() const;
  std::string to_string() const;

  friend WeightVector operator+(const WeightVector& x, const WeightVector& y);
  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

/// Index layout of the totally positive integers with trace <= T.
///
/// Keys are ordered by (trace, a, b). For every trace t the admissible b form
/// an arithmetic progression, so index lookup is constant time.
class TraceBox {
 public:
  TraceBox() = default;
  TraceBox(const QuadraticRing& ring, std::int64_t trace_bound);

  std::int64_t trace_bound() const { return trace_bound_; }
  std::size_t size() const { return keys_.size(); }
  const std::vector<LatticePoint>& keys() const { return keys_; }
  const LatticePoint& key(std::size_t i) const { return keys_[i]; }
  std::int64_t trace_of(const LatticePoint& p) const {
    return ring_.degree == 1 ? p.a : 2 * p.a + ring_.omega_trace() * p.b;
  }

  /// Keys of trace t occupy [offset(t), offset(t) + count(t)).
  std::size_t offset(std::int64_t t) const { return offsets_[static_cast<std::size_t>(t)]; }
  std::size_t count(std::int64_t t) const { return offset(t + 1) - offset(t); }
  /// Largest |b| among keys of trace t, or -1 if there are none.
  std::int64_t bmax(std::int64_t t) const { return bmax_[static_cast<std::size_t>(t)]; }

  /// Position of a key inside the box, or nullopt if it is not a key.
  std::optional<std::size_t> index_of(const LatticePoint& p) const;
  /// Position of the key (t, b), which must exist.
  std::size_t index_unchecked(std::int64_t t, std::int64_t b) const;

  const QuadraticRing& ring() const { return ring_; }

 private:
  QuadraticRing ring_{};
  std::int64_t trace_bound_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::int64_t> bmax_;
  std::vector<LatticePoint> keys_;
};

class FourierExpansion {
 public:
  FourierExpansion() = default;
  FourierExpansion(FieldDesc field, WeightVector weight, std::int64_t trace_bound,
                   FieldElement const_term = FieldElement(), int twopi_power = 0);

  const FieldDesc& field() const { return field_; }
  const WeightVector& weight() const { return weight_; }
  std::int64_t trace_bound() const { return box_.trace_bound(); }
  int twopi_power() const { return twopi_power_; }
  const FieldElement& const_term() const { return const_term_; }
  const TraceBox& box() const { return box_; }
  std::size_t size() const { return box_.size(); }

  /// Coefficient at 0 or at a totally positive nu inside the box. Throws
  /// TruncationError beyond the box and PreconditionError for other nu.
  FieldElement coefficient(const FieldElement& nu) const;
  FieldElement coefficient(const LatticePoint& nu) const;
  FieldElement at(std::size_t index) const;
  const Rational& coeff_a(std::size_t index) const { return ca_[index]; }
  const Rational& coeff_b(std::size_t index) const { return cb_[index]; }

  void set(const LatticePoint& nu, const FieldElement& value);
  void set_at(std::size_t index, Rational a, Rational b = 0);
  void set_const_term(FieldElement c) { const_term_ = std::move(c); }
  void set_twopi_power(int p) { twopi_power_ = p; }

  /// True iff every stored value (and the constant term) is rational.
  bool is_rational() const;
  bool is_zero() const;

  friend bool operator==(const FourierExpansion& x, const FourierExpansion& y);

 private:
  FieldDesc field_;
  WeightVector weight_;
  TraceBox box_;
  FieldElement const_term_;
  int twopi_power_ = 0;
  std::vector<Rational> ca_;
  std::vector<Rational> cb_;
};

FourierExpansion const_expansion(const FieldDesc& field, const WeightVector& weight,
                                 std::int64_t trace_bound, const Rational& c);

/// Pointwise sum; trace bound is the smaller one.
FourierExpansion add(const FourierExpansion& f, const FourierExpansion& g);
FourierExpansion subtract(const FourierExpansion& f, const FourierExpansion& g);
FourierExpansion scalar_mul(const Rational& c, const FourierExpansion& f);
FourierExpansion scalar_mul(const FieldElement& c, const FourierExpansion& f);

/// Cauchy product over nu_1 + nu_2 = nu with nu_i >> 0 or nu_i = 0.
FourierExpansion multiply(const FourierExpansion& f, const FourierExpansion& g);

/// The m-th Rankin-Cohen bracket [f, g]_m for scalar m, weight k + l + 2m.
FourierExpansion rc_bracket(const FourierExpansion& f, const FourierExpansion& g, int m);

FieldElement coefficient(const FourierExpansion& f, const FieldElement& nu);

/// Restriction to a smaller trace bound.
FourierExpansion truncate(const FourierExpansion& f, std::int64_t trace_bound);

FourierExpansion operator+(const FourierExpansion& f, const FourierExpansion& g);
FourierExpansion operator-(const FourierExpansion& f, const FourierExpansion& g);
FourierExpansion operator*(const FourierExpansion& f, const FourierExpansion& g);
FourierExpansion operator*(const Rational& c, const FourierExpansion& f);

/// Versioned JSON document; rationals are "num/den" strings.
nlohmann::json to_json(const FourierExpansion& f);
FourierExpansion expansion_from_json(const nlohmann::json& doc);

}  // namespace hmf
