#pragma once

// Covolumes of Hilbert modular groups of real quadratic fields, Stark's
// discriminant bound, the rho constant and a survey over all quadratic d.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "hmf/charzeta.hpp"
#include "hmf/numfield.hpp"

namespace hmf {

/// [O^{x+} : (O^x)^2]: 1 when the fundamental unit has norm -1, else 2.
int unit_index(const FieldDesc& field);

/// (4 pi)^-n vol = 2^(1-2n) pi^(-2n) D^(3/2) zeta_F(2) / unit_index, n = 2.
NumericValue normalized_volume(const FieldDesc& field, std::int64_t terms);

/// 2^(2-3n) pi^(-2n) D^(3/2), n = 2.
double volume_lower_bound(const FieldDesc& field);

/// n (log pi - psi(s/2)) - 2/s - 2/(s-1) with s = 1 + 1/sqrt(n).
double stark_lower_bound(int n);

struct StarkScan {
  double threshold = -1.9;
  std::int64_t n_max = 0;
  /// Least n0 with psi(s_n / 2) < threshold for every n0 < n <= n_max.
  std::optional<std::int64_t> n0;
  bool bound_increasing_beyond_n0 = false;
};

/// psi(s_n / 2) decreases in n, so the scan stops at the first crossing and
/// then confirms the tail up to n_max.
StarkScan scan_stark_n0(double threshold, std::int64_t n_max);

struct RhoReport {
  double delta = 0.0;
  double lhs = 0.0;  // (pi e^1.9)^(3/2)
  double rhs = 0.0;  // 8 pi^2
  bool inequality_holds = false;
  double rho = 0.0;  // (pi e^1.9)^(3/2 - delta) / (8 pi^2)
  bool rho_exceeds_one = false;
  /// 4 D^delta exp(n log rho - 3 (1 + sqrt n)) when (n, D) is supplied.
  std::optional<double> final_bound;
};

RhoReport rho_constants(double delta, std::optional<std::pair<int, double>> n_and_D = std::nullopt);

struct SurveyRow {
  std::int64_t d = 0;
  std::int64_t D = 0;
  int unit_index = 1;
  NumericValue zeta2;
  NumericValue norm_volume;
  double lower_bound = 0.0;
  bool stark_ok = false;
};

struct SurveyReport {
  std::vector<SurveyRow> rows;  // ascending D
  bool lower_bound_monotone = false;
  bool all_above_lower_bound = false;
  std::size_t min_volume_row = 0;
};

/// Rows for every squarefree 2 <= d <= d_max, computed on `threads` workers.
SurveyReport freitag_survey(std::int64_t d_max, std::int64_t terms, unsigned threads = 0);

/// Header d,D,unit_index,zeta2,zeta2_err,norm_volume,lower_bound,stark_ok; 12 significant digits.
std::string survey_csv(const SurveyReport& report);

nlohmann::json to_json(const SurveyRow& row);
nlohmann::json to_json(const SurveyReport& report);
nlohmann::json to_json(const RhoReport& report);
nlohmann::json to_json(const StarkScan& scan);

}  // namespace hmf
