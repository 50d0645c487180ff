#pragma once

// Concrete forms and Hecke theory on coefficient data: Eisenstein series,
// Hecke coefficients c(n, f), Hecke operators, eigenform tests, exact linear
// algebra on spans of expansions, and the equal-weight bracket scan.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hmf/fourier.hpp"
#include "hmf/numfield.hpp"

namespace hmf {

enum class FormKind { cusp, eisenstein, other };
std::string to_string(FormKind kind);

/// c(n, f) for every integral ideal n with N(n) <= norm_bound.
struct HeckeTable {
  std::string id;
  FieldDesc field;
  int weight = 0;
  FormKind kind = FormKind::other;
  bool normalized = false;
  std::int64_t norm_bound = 0;
  std::map<Ideal, Rational> values;

  /// Throws TruncationError for ideals beyond norm_bound.
  const Rational& at(const Ideal& n) const;
};

struct HeckeWitness {
  std::string relation;  // "multiplicativity" or "prime-power"
  Ideal m;
  Ideal n;
  Rational lhs;
  Rational rhs;
};

enum class HeckeStatus { consistent, violated, not_normalizable };
std::string to_string(HeckeStatus status);

struct HeckeReport {
  HeckeStatus status = HeckeStatus::consistent;
  std::vector<HeckeWitness> witnesses;
  std::int64_t tested_bound = 0;
  std::int64_t multiplicativity_checks = 0;
  std::int64_t recurrence_checks = 0;
};

/// sigma_e(n) = sum_{a | n} N(a)^e.
Integer sigma(const Ideal& n, int exponent);

/// Normalized Eisenstein series: c(n) = sigma_{k-1}(n), a(0) = 2^-n zeta_F(1-k).
FourierExpansion eisenstein(const FieldDesc& field, int k, std::int64_t trace_bound);

/// Smallest trace bound whose box holds a generator of every ideal of norm <= B.
std::int64_t trace_bound_for_norm(const FieldDesc& field, std::int64_t norm_bound);
/// Largest B such that every ideal of norm <= B has a generator inside the box.
std::int64_t covered_norm_bound(const FieldDesc& field, std::int64_t trace_bound);

/// c(n, f) = a(nu) for parallel weight, nu the least-trace generator of n.
Rational hecke_coeff(const FourierExpansion& f, const Ideal& n);
Rational hecke_coeff(const FourierExpansion& f, const PrincipalIdeal& n);

/// c(m, T_n f) = sum_{a | m + n} N(a)^(k-1) c(m n a^-2, f), on the largest
/// trace box where every term is available.
FourierExpansion hecke_operator(const FourierExpansion& f, const Ideal& n);
FourierExpansion hecke_operator(const FourierExpansion& f, const PrincipalIdeal& n);

/// Table of c(n, f) / c((1), f) (or raw values when normalize is false).
HeckeTable hecke_table(const FourierExpansion& f, std::int64_t norm_bound, FormKind kind,
                       const std::string& id, bool normalize = true);
/// sigma_{k-1} table of E_k computed from divisor sums.
HeckeTable eisenstein_table(const FieldDesc& field, int k, std::int64_t norm_bound);
/// c(n) = 1 for all n: the Dedekind zeta series.
HeckeTable ones_table(const FieldDesc& field, std::int64_t norm_bound);

/// Multiplicativity for coprime pairs and the prime-power recurrence, up to
/// min(norm_bound, covered_norm_bound).
HeckeReport eigencheck(const FourierExpansion& f, std::int64_t norm_bound);

/// Divides by the coefficient at nu = 1.
FourierExpansion normalize(const FourierExpansion& f);

struct SpanResult {
  std::size_t rank = 0;
  /// Each vector v satisfies sum_i v_i f_i = 0.
  std::vector<std::vector<Rational>> kernel;
};

/// Exact elimination on (constant term, all coefficients) at the common trace bound.
SpanResult span_rank(const std::vector<FourierExpansion>& forms);

/// Echelon basis of the span restricted to the common trace bound.
std::vector<FourierExpansion> span_basis(const std::vector<FourierExpansion>& forms);

/// Echelon basis of the kernel of the constant-term functional on the span.
std::vector<FourierExpansion> construct_cusp_space(const std::vector<FourierExpansion>& generators);

/// All products E_{k_1} ... E_{k_r} of weight k with k_i in {2 (degree 2 only), 4, ..., k}.
std::vector<FourierExpansion> eisenstein_monomials(const FieldDesc& field, int k, std::int64_t trace_bound);

struct EigenbasisResult {
  bool split = false;
  std::vector<Rational> charpoly;  // monic, lowest degree first
  std::vector<Integer> eigenvalues;
  std::vector<FourierExpansion> eigenforms;
  std::string diagnostic;
};

/// Diagonalizes T_p on a Hecke-stable span of dimension <= 4 when the
/// characteristic polynomial splits over Q with distinct roots.
EigenbasisResult eigenbasis(const std::vector<FourierExpansion>& subspace, const Ideal& p);

struct ScanRow {
  int k = 0;
  bool bracket_zero = false;
  HeckeReport report;
};

struct ScanReport {
  int m = 0;
  bool odd_degree_identity_checked = false;
  bool odd_degree_identity_holds = true;
  std::vector<ScanRow> rows;
  std::optional<int> largest_consistent_k;
};

/// eigencheck([E_k, E_k]_m) for even k <= k_max.
ScanReport scan_equal_weight_brackets(const FieldDesc& field, int k_max, int m, std::int64_t norm_bound);

/// The instance [g, h]_m of a non-eigenform statement: hypothesis evidence
/// from the cusp span rank in the target weight, and the eigencheck verdict.
struct DeskInstance {
  std::string label;
  int target_weight = 0;
  std::size_t cusp_rank = 0;
  std::size_t required_rank = 0;
  bool hypothesis_met = false;
  std::string branch;
  HeckeReport report;
  bool as_expected = false;
};

/// E_4 * s_6 over Q(sqrt(5)), with s_6 the cusp form in span{E_2^3, E_6}.
DeskInstance desk_instance_eisenstein_times_cusp(const FieldDesc& field, std::int64_t norm_bound);
/// [E_2, E_4]_m over Q(sqrt(5)).
DeskInstance desk_instance_eisenstein_bracket(const FieldDesc& field, int m, std::int64_t norm_bound);

nlohmann::json to_json(const HeckeReport& report);
nlohmann::json to_json(const ScanReport& report);
nlohmann::json to_json(const DeskInstance& inst);

}  // namespace hmf
