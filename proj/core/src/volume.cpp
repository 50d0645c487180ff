#include "hmf/volume.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace hmf {

namespace {

constexpr double kPi = std::numbers::pi;

void require_quadratic(const FieldDesc& field) {
  if (field.degree != 2) throw PreconditionError("volume data is defined for real quadratic fields only");
}

double volume_scale(const FieldDesc& field) {
  return std::pow(2.0, -3.0) * std::pow(kPi, -4.0) * std::pow(static_cast<double>(field.discriminant), 1.5);
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace

int unit_index(const FieldDesc& field) {
  require_quadratic(field);
  return field.fund_unit_norm == -1 ? 1 : 2;
}

NumericValue normalized_volume(const FieldDesc& field, std::int64_t terms) {
  require_quadratic(field);
  if (terms < 1000) throw PreconditionError("normalized_volume needs at least 1000 terms");
  const NumericValue z = zeta_numeric(field, 2.0, terms);
  const double scale = volume_scale(field) / unit_index(field);
  NumericValue v;
  v.value = scale * z.value;
  v.abs_error_bound = scale * z.abs_error_bound + 8 * std::numeric_limits<double>::epsilon() * std::fabs(v.value);
  return v;
}

double volume_lower_bound(const FieldDesc& field) {
  require_quadratic(field);
  return std::pow(2.0, -4.0) * std::pow(kPi, -4.0) * std::pow(static_cast<double>(field.discriminant), 1.5);
}

double stark_lower_bound(int n) {
  if (n < 2) throw PreconditionError("stark_lower_bound needs n >= 2");
  const double s = 1.0 + 1.0 / std::sqrt(static_cast<double>(n));
  return n * (std::log(kPi) - digamma(s / 2).value) - 2.0 / s - 2.0 / (s - 1.0);
}

StarkScan scan_stark_n0(double threshold, std::int64_t n_max) {
  if (n_max < 2) throw PreconditionError("scan needs n_max >= 2");
  StarkScan scan;
  scan.threshold = threshold;
  scan.n_max = n_max;
  auto below = [&](std::int64_t n) {
    const double s = 1.0 + 1.0 / std::sqrt(static_cast<double>(n));
    return digamma(s / 2).upper() < threshold;
  };
  std::int64_t last_bad = 1;
  for (std::int64_t n = 2; n <= n_max; ++n)
    if (!below(n)) last_bad = n;
  if (last_bad < n_max) scan.n0 = last_bad;
  if (scan.n0) {
    scan.bound_increasing_beyond_n0 = true;
    double prev = stark_lower_bound(static_cast<int>(std::max<std::int64_t>(*scan.n0 + 1, 2)));
    for (std::int64_t n = *scan.n0 + 2; n <= n_max; ++n) {
      const double cur = stark_lower_bound(static_cast<int>(n));
      if (!(cur > prev)) scan.bound_increasing_beyond_n0 = false;
      prev = cur;
    }
  }
  return scan;
}

RhoReport rho_constants(double delta, std::optional<std::pair<int, double>> n_and_D) {
  RhoReport r;
  r.delta = delta;
  const double base = kPi * std::exp(1.9);
  r.lhs = std::pow(base, 1.5);
  r.rhs = 8 * kPi * kPi;
  r.inequality_holds = r.lhs > r.rhs;
  r.rho = std::pow(base, 1.5 - delta) / r.rhs;
  r.rho_exceeds_one = r.rho > 1.0;
  if (n_and_D) {
    const auto [n, D] = *n_and_D;
    const double log_value = std::log(4.0) + delta * std::log(D) + n * std::log(r.rho) - 3.0 * (1.0 + std::sqrt(n));
    r.final_bound = std::exp(log_value);
  }
  return r;
}

SurveyReport freitag_survey(std::int64_t d_max, std::int64_t terms, unsigned threads) {
  if (d_max < 5) throw PreconditionError("survey needs d_max >= 5");
  std::vector<std::int64_t> ds;
  for (std::int64_t d = 2; d <= d_max; ++d)
    if (is_squarefree(d)) ds.push_back(d);
  std::vector<SurveyRow> rows(ds.size());
  const double stark2 = stark_lower_bound(2);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ds.size(); i = next++) {
      const FieldDesc field = make_field(ds[i]);
      SurveyRow& row = rows[i];
      row.d = field.d;
      row.D = field.discriminant;
      row.unit_index = unit_index(field);
      row.zeta2 = zeta_numeric(field, 2.0, terms);
      row.norm_volume = normalized_volume(field, terms);
      row.lower_bound = volume_lower_bound(field);
      row.stark_ok = std::log(static_cast<double>(row.D)) >= stark2;
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::sort(rows.begin(), rows.end(), [](const SurveyRow& x, const SurveyRow& y) { return x.D < y.D; });
  SurveyReport rep;
  rep.rows = std::move(rows);
  rep.lower_bound_monotone = true;
  rep.all_above_lower_bound = true;
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const SurveyRow& r = rep.rows[i];
    if (i > 0 && !(r.lower_bound > rep.rows[i - 1].lower_bound)) rep.lower_bound_monotone = false;
    if (!(r.norm_volume.lower() > r.lower_bound)) rep.all_above_lower_bound = false;
    if (r.norm_volume.value < rep.rows[rep.min_volume_row].norm_volume.value) rep.min_volume_row = i;
  }
  return rep;
}

std::string survey_csv(const SurveyReport& report) {
  std::ostringstream out;
  out << "d,D,unit_index,zeta2,zeta2_err,norm_volume,lower_bound,stark_ok\n";
  for (const auto& r : report.rows)
    out << r.d << ',' << r.D << ',' << r.unit_index << ',' << fmt12(r.zeta2.value) << ','
        << fmt12(r.zeta2.abs_error_bound) << ',' << fmt12(r.norm_volume.value) << ',' << fmt12(r.lower_bound) << ','
        << (r.stark_ok ? "true" : "false") << '\n';
  return out.str();
}

nlohmann::json to_json(const SurveyRow& r) {
  return {{"d", r.d},
          {"D", r.D},
          {"unit_index", r.unit_index},
          {"zeta2", r.zeta2.value},
          {"zeta2_err", r.zeta2.abs_error_bound},
          {"norm_volume", r.norm_volume.value},
          {"norm_volume_err", r.norm_volume.abs_error_bound},
          {"lower_bound", r.lower_bound},
          {"stark_ok", r.stark_ok}};
}

nlohmann::json to_json(const SurveyReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) rows.push_back(to_json(r));
  nlohmann::json j{{"rows", rows},
                   {"lower_bound_monotone", report.lower_bound_monotone},
                   {"all_above_lower_bound", report.all_above_lower_bound}};
  if (!report.rows.empty()) j["min_volume"] = to_json(report.rows[report.min_volume_row]);
  return j;
}

nlohmann::json to_json(const RhoReport& r) {
  nlohmann::json j{{"delta", r.delta},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"inequality_holds", r.inequality_holds},
                   {"rho", r.rho},
                   {"rho_exceeds_one", r.rho_exceeds_one}};
  if (r.final_bound) j["final_bound"] = *r.final_bound;
  return j;
}

nlohmann::json to_json(const StarkScan& s) {
  nlohmann::json j{{"threshold", s.threshold}, {"n_max", s.n_max},
                   {"bound_increasing_beyond_n0", s.bound_increasing_beyond_n0}};
  j["n0"] = s.n0 ? nlohmann::json(*s.n0) : nlohmann::json();
  return j;
}

}  // namespace hmf
