#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cache.hpp"
#include "config.hpp"
#include "hmf/charzeta.hpp"
#include "hmf/forms.hpp"
#include "hmf/fourier.hpp"
#include "hmf/lseries.hpp"
#include "hmf/numfield.hpp"
#include "hmf/volume.hpp"

namespace hmf::cli {

namespace {

struct Context {
  RunConfig config;
  ExpansionCache cache{""};
  std::ostream& out;
};

std::string num(double x, int digits = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

FourierExpansion cached_eisenstein(const Context& ctx, const FieldDesc& field, int k, std::int64_t T) {
  return ctx.cache.get_or_build(field.d, "E" + std::to_string(k), T, [&] { return eisenstein(field, k, T); });
}

/// The normalized cusp eigenform of weight k spanned by Eisenstein monomials.
FourierExpansion cached_cusp_eigenform(const Context& ctx, const FieldDesc& field, int k, std::int64_t T) {
  return ctx.cache.get_or_build(field.d, "cusp" + std::to_string(k), T, [&] {
    std::vector<FourierExpansion> gens;
    for (const auto& g : eisenstein_monomials(field, k, T)) gens.push_back(g);
    auto space = construct_cusp_space(gens);
    if (space.empty()) throw PreconditionError("no cusp form of weight " + std::to_string(k) + " in the monomial span");
    if (space.size() == 1) return normalize(space[0]);
    Ideal p;
    for (const Ideal& n : ideals_up_to(field, 50))
      if (n.factors().size() == 1 && n.factors()[0].second == 1) {
        p = n;
        break;
      }
    EigenbasisResult eb = eigenbasis(space, p);
    if (!eb.split) throw std::runtime_error("cusp space of weight " + std::to_string(k) + ": " + eb.diagnostic);
    return normalize(eb.eigenforms[0]);
  });
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text)) throw std::runtime_error("cannot write " + path);
}

void emit_expansion(Context& ctx, const FourierExpansion& f, const std::string& out_path) {
  const std::string text = expansion_file_text(f);
  if (out_path.empty()) ctx.out << text;
  else write_text_file(out_path, text);
}

void print_hecke_text(std::ostream& out, const HeckeReport& r, std::size_t max_witnesses = 5) {
  out << "status: " << to_string(r.status) << "\n"
      << "tested norm bound: " << r.tested_bound << "\n"
      << "multiplicativity checks: " << r.multiplicativity_checks << "\n"
      << "prime-power checks: " << r.recurrence_checks << "\n"
      << "witnesses: " << r.witnesses.size() << "\n";
  for (std::size_t i = 0; i < r.witnesses.size() && i < max_witnesses; ++i) {
    const auto& w = r.witnesses[i];
    out << "  " << w.relation << " m=" << w.m.to_string() << " (N=" << w.m.norm() << ") n=" << w.n.to_string()
        << " (N=" << w.n.norm() << "): " << to_fraction_string(w.lhs) << " != " << to_fraction_string(w.rhs) << "\n";
  }
}

void print_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------

int cmd_field(Context& ctx) {
  const FieldDesc field = make_field(ctx.config.d);
  if (ctx.config.format == OutputFormat::json) {
    print_json(ctx.out, {{"d", field.d},
                         {"degree", field.degree},
                         {"discriminant", field.discriminant},
                         {"half_omega", field.ring.half_omega},
                         {"different_gen", field.different_gen.to_string()},
                         {"fund_unit", field.fund_unit.to_string()},
                         {"fund_unit_norm", field.fund_unit_norm},
                         {"narrow_h1", field.narrow_h1}});
  } else {
    ctx.out << field.describe();
  }
  return kSuccess;
}

int cmd_eis(Context& ctx, int k, const std::string& out_path) {
  const FieldDesc field = make_field(ctx.config.d);
  emit_expansion(ctx, cached_eisenstein(ctx, field, k, ctx.config.trace_bound), out_path);
  return kSuccess;
}

int cmd_bracket(Context& ctx, int k, int l, int m, const std::string& left, const std::string& right,
                const std::string& out_path) {
  const FieldDesc field = make_field(ctx.config.d);
  const std::int64_t T = ctx.config.trace_bound;
  FourierExpansion f = left.empty() ? cached_eisenstein(ctx, field, k, T) : read_expansion_file(left);
  FourierExpansion g = right.empty() ? cached_eisenstein(ctx, field, l, T) : read_expansion_file(right);
  emit_expansion(ctx, rc_bracket(f, g, m), out_path);
  return kSuccess;
}

int cmd_eigencheck(Context& ctx, const std::string& in) {
  const FourierExpansion f = read_expansion_file(in);
  const HeckeReport r = eigencheck(f, ctx.config.norm_bound);
  if (ctx.config.format == OutputFormat::json) {
    print_json(ctx.out, to_json(r));
  } else {
    ctx.out << "check: Hecke eigenform test (multiplicativity and prime-power recurrence)\n"
            << "form: weight " << f.weight().to_string() << " over "
            << (f.field().degree == 1 ? std::string("Q") : "Q(sqrt(" + std::to_string(f.field().d) + "))")
            << ", trace bound " << f.trace_bound() << "\n";
    print_hecke_text(ctx.out, r);
  }
  return r.status == HeckeStatus::consistent ? kSuccess : kCheckFailed;
}

struct SuiteRow {
  std::string name;
  bool pass;
};

bool proportional(const FourierExpansion& x, const FourierExpansion& y) {
  return !x.is_zero() && !y.is_zero() && span_rank({x, y}).rank == 1;
}

int cmd_duke_ghate(Context& ctx, std::optional<std::int64_t> trace) {
  const FieldDesc Q = make_field(1);
  const std::int64_t T = trace.value_or(200);
  auto E = [&](int k) { return cached_eisenstein(ctx, Q, k, T); };
  auto S = [&](int k) { return cached_cusp_eigenform(ctx, Q, k, T); };
  std::vector<SuiteRow> rows;
  auto identity = [&](const std::string& name, const FourierExpansion& product, const FourierExpansion& target) {
    rows.push_back({name, proportional(product, target) && eigencheck(product, T).status == HeckeStatus::consistent});
  };
  identity("E4*E4 == E8", E(4) * E(4), E(8));
  identity("E4*E6 == E10", E(4) * E(6), E(10));
  identity("E4*E10 == E14", E(4) * E(10), E(14));
  identity("E6*E8 == E14", E(6) * E(8), E(14));
  const FourierExpansion delta = S(12);
  identity("E4*Delta == Delta16", E(4) * delta, S(16));
  identity("E6*Delta == Delta18", E(6) * delta, S(18));
  identity("E8*Delta == Delta20", E(8) * delta, S(20));
  identity("E10*Delta == Delta22", E(10) * delta, S(22));
  identity("E14*Delta == Delta26", E(14) * delta, S(26));
  rows.push_back({"E4*E8 is not an eigenform", eigencheck(E(4) * E(8), T).status == HeckeStatus::violated});
  rows.push_back({"E6*E6 is not an eigenform", eigencheck(E(6) * E(6), T).status == HeckeStatus::violated});

  bool all = true;
  for (const auto& r : rows) all = all && r.pass;
  if (ctx.config.format == OutputFormat::json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) j.push_back({{"identity", r.name}, {"pass", r.pass}});
    print_json(ctx.out, {{"trace_bound", T}, {"rows", j}, {"all_pass", all}});
  } else {
    ctx.out << "check: degree-1 eigenform product identities, trace bound " << T << "\n";
    for (const auto& r : rows) ctx.out << r.name << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
  }
  return all ? kSuccess : kCheckFailed;
}

void print_instance_text(std::ostream& out, const DeskInstance& inst) {
  out << "instance: " << inst.label << "\n"
      << "target weight: " << inst.target_weight << "\n"
      << "cusp span rank: " << inst.cusp_rank << " (required " << inst.required_rank << ")\n"
      << "branch: " << inst.branch << "\n";
  print_hecke_text(out, inst.report, 3);
  out << "outcome: " << (inst.as_expected ? "as expected" : "UNEXPECTED") << "\n";
}

int cmd_main_theorem(Context& ctx, int which) {
  const FieldDesc field = make_field(ctx.config.d);
  std::vector<DeskInstance> insts;
  std::string anchor;
  if (which == 1) {
    anchor = "non-eigenform instance: Eisenstein series times cusp form";
    insts.push_back(desk_instance_eisenstein_times_cusp(field, ctx.config.norm_bound));
  } else if (which == 2) {
    anchor = "non-eigenform instance: Rankin-Cohen brackets of Eisenstein series";
    for (int m = 0; m <= 2; ++m) insts.push_back(desk_instance_eisenstein_bracket(field, m, ctx.config.norm_bound));
  } else {
    throw PreconditionError("--case must be 1 or 2");
  }
  bool all = true;
  for (const auto& i : insts) all = all && i.as_expected;
  if (ctx.config.format == OutputFormat::json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& i : insts) j.push_back(to_json(i));
    print_json(ctx.out, {{"check", anchor}, {"case", which}, {"instances", j}, {"all_as_expected", all}});
  } else {
    ctx.out << "check: " << anchor << " (case " << which << ")\n";
    for (const auto& i : insts) {
      ctx.out << "\n";
      print_instance_text(ctx.out, i);
    }
  }
  return all ? kSuccess : kCheckFailed;
}

int cmd_lcheck(Context& ctx, int k, int l, int m) {
  const FieldDesc field = make_field(ctx.config.d);
  const int weight = k + l + 2 * m;
  const std::int64_t B = ctx.config.lseries_bound;
  const std::int64_t T = trace_bound_for_norm(field, B);
  const FourierExpansion f = cached_cusp_eigenform(ctx, field, weight, T);
  const HeckeTable table = hecke_table(f, B, FormKind::cusp, "f" + std::to_string(weight));
  const FactorizationReport r = check_rs_factorization(field, table, l, k, m, B, ctx.config.tolerance);
  if (ctx.config.format == OutputFormat::json) {
    print_json(ctx.out, to_json(r));
  } else {
    ctx.out << "check: L(s,f,E_l) zeta_F(k) = L(s,f) L(k+m,f) at s = k+l+m-1\n"
            << "k=" << r.k << " l=" << r.l << " m=" << r.m << " s=" << r.s << " norm bound " << r.bound << "\n";
    for (const auto& fv : r.factors)
      ctx.out << "  " << fv.name << " at s=" << fv.s << ": " << num(fv.value) << " +- " << num(fv.error, 3) << " ["
              << fv.method << (fv.rigorous ? ", rigorous" : ", estimate") << "]\n";
    ctx.out << "lhs: " << num(r.lhs) << "\nrhs: " << num(r.rhs) << "\n"
            << "relative discrepancy: " << num(r.relative_discrepancy, 3) << "\n"
            << "error budget: " << num(r.error_budget, 3) << "\n"
            << "verdict: " << (r.passed ? "pass" : "fail") << "\n";
  }
  return r.passed ? kSuccess : kCheckFailed;
}

int cmd_volume(Context& ctx, std::int64_t terms, double delta) {
  const FieldDesc field = make_field(ctx.config.d);
  const NumericValue v = normalized_volume(field, terms);
  const NumericValue z = zeta_numeric(field, 2.0, terms);
  const double lb = volume_lower_bound(field);
  const RhoReport rho = rho_constants(delta, std::make_pair(2, static_cast<double>(field.discriminant)));
  const bool above = v.lower() > lb;
  if (ctx.config.format == OutputFormat::json) {
    print_json(ctx.out, {{"d", field.d},
                         {"D", field.discriminant},
                         {"unit_index", unit_index(field)},
                         {"zeta2", z.value},
                         {"zeta2_err", z.abs_error_bound},
                         {"norm_volume", v.value},
                         {"norm_volume_err", v.abs_error_bound},
                         {"lower_bound", lb},
                         {"above_lower_bound", above},
                         {"stark_bound_n2", stark_lower_bound(2)},
                         {"rho", to_json(rho)}});
  } else {
    ctx.out << "check: normalized covolume of the Hilbert modular group\n"
            << "field: Q(sqrt(" << field.d << ")), D = " << field.discriminant << "\n"
            << "unit index: " << unit_index(field) << "\n"
            << "zeta_F(2): " << num(z.value) << " +- " << num(z.abs_error_bound, 3) << "\n"
            << "normalized volume: " << num(v.value, 6) << " +- " << num(v.abs_error_bound, 3) << "\n"
            << "lower bound: " << num(lb, 6) << " (" << (above ? "exceeded" : "NOT exceeded") << ")\n"
            << "rho(" << delta << "): " << num(rho.rho, 6) << (rho.rho_exceeds_one ? " > 1" : " <= 1") << "\n";
  }
  return above ? kSuccess : kCheckFailed;
}

int cmd_survey(Context& ctx, std::int64_t d_max, std::int64_t terms, unsigned threads) {
  const SurveyReport rep = freitag_survey(d_max, terms, threads);
  if (ctx.config.format == OutputFormat::json) print_json(ctx.out, to_json(rep));
  else ctx.out << survey_csv(rep);
  return rep.all_above_lower_bound ? kSuccess : kCheckFailed;
}

int cmd_scan(Context& ctx, int m, int k_max) {
  const FieldDesc field = make_field(ctx.config.d);
  const ScanReport rep = scan_equal_weight_brackets(field, k_max, m, ctx.config.norm_bound);
  if (ctx.config.format == OutputFormat::json) {
    print_json(ctx.out, to_json(rep));
  } else {
    ctx.out << "check: equal-weight brackets [E_k, E_k]_" << m << " up to k = " << k_max << "\n";
    if (rep.odd_degree_identity_checked)
      ctx.out << "odd degree sign identity: " << (rep.odd_degree_identity_holds ? "holds" : "FAILS") << "\n";
    for (const auto& row : rep.rows)
      ctx.out << "k=" << row.k << ": " << (row.bracket_zero ? "zero" : to_string(row.report.status)) << " ("
              << row.report.witnesses.size() << " witnesses, norm bound " << row.report.tested_bound << ")\n";
    ctx.out << "largest consistent k: "
            << (rep.largest_consistent_k ? std::to_string(*rep.largest_consistent_k) : std::string("none")) << "\n";
  }
  return rep.odd_degree_identity_holds ? kSuccess : kCheckFailed;
}

std::optional<std::string> find_config_arg(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return std::nullopt;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    if (auto path = find_config_arg(argc, argv)) apply_config_file(config, *path);
    if (const char* env = std::getenv(kCacheDirEnv); env && *env) config.cache_dir = env;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  CLI::App app{"Exact coefficient computations with Hilbert modular forms", "hmf"};
  app.fallthrough();
  app.require_subcommand(1);
  std::string config_path, format = to_string(config.format), cache_dir = config.cache_dir.string();
  std::optional<std::int64_t> trace_flag;
  app.add_option("--config", config_path, "key=value configuration file");
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--cache-dir", cache_dir, "expansion cache directory (env " + std::string(kCacheDirEnv) + ")");
  app.add_option("--d", config.d, "squarefree d, 1 for Q");
  app.add_option("--trace-bound", trace_flag, "trace bound of expansions");
  app.add_option("--norm-bound", config.norm_bound, "norm bound of Hecke checks");
  app.add_option("--lseries-bound", config.lseries_bound, "norm bound of L-series truncations");
  app.add_option("--tol", config.tolerance, "tolerance of numeric checks");

  int k = 4, l = 4, m = 0, which = 1, k_max = 16;
  std::int64_t d_max = 100, terms = 100000;
  unsigned threads = 0;
  double delta = 0.05;
  std::string in, out_path, left, right;

  auto* field = app.add_subcommand("field", "print the field description");
  auto* eis = app.add_subcommand("eis", "Eisenstein expansion as JSON");
  eis->add_option("--k", k, "parallel weight")->required();
  eis->add_option("--out", out_path, "write to a file instead of stdout");
  auto* bracket = app.add_subcommand("bracket", "Rankin-Cohen bracket of two forms as JSON");
  bracket->add_option("--k", k, "weight of the left Eisenstein series");
  bracket->add_option("--l", l, "weight of the right Eisenstein series");
  bracket->add_option("--m", m, "bracket order")->required();
  bracket->add_option("--cusp-left", left, "expansion file used as the left form");
  bracket->add_option("--cusp-right", right, "expansion file used as the right form");
  bracket->add_option("--out", out_path, "write to a file instead of stdout");
  auto* eigen = app.add_subcommand("eigencheck", "Hecke eigenform test of an expansion file");
  eigen->add_option("--in", in, "expansion file")->required();
  auto* duke = app.add_subcommand("duke-ghate", "degree-1 eigenform product identities");
  auto* main_thm = app.add_subcommand("main-theorem", "non-eigenform instances over Q(sqrt(5))");
  main_thm->add_option("--case", which, "1: E4*s6, 2: [E2,E4]_m")->required()->check(CLI::Range(1, 2));
  auto* lcheck = app.add_subcommand("lcheck", "L-series product identity");
  lcheck->add_option("--k", k)->required();
  lcheck->add_option("--l", l)->required();
  lcheck->add_option("--m", m)->required();
  auto* volume = app.add_subcommand("volume", "normalized covolume of one field");
  volume->add_option("--terms", terms, "terms of the zeta truncation");
  volume->add_option("--delta", delta, "exponent delta of the rho constant");
  auto* survey = app.add_subcommand("survey", "covolumes of all real quadratic fields up to d-max");
  survey->add_option("--d-max", d_max)->required();
  survey->add_option("--terms", terms, "terms of the zeta truncation");
  survey->add_option("--threads", threads, "worker threads, 0 for all cores");
  auto* scan = app.add_subcommand("scan-k0", "eigenform scan of [E_k, E_k]_m");
  scan->add_option("--m", m)->required();
  scan->add_option("--k-max", k_max)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kSuccess;
    }
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    config.format = parse_format(format);
    config.cache_dir = cache_dir;
    if (trace_flag) config.trace_bound = *trace_flag;
    validate(config);
    Context ctx{config, ExpansionCache(config.cache_dir), out};
    if (*field) return cmd_field(ctx);
    if (*eis) return cmd_eis(ctx, k, out_path);
    if (*bracket) return cmd_bracket(ctx, k, l, m, left, right, out_path);
    if (*eigen) return cmd_eigencheck(ctx, in);
    if (*duke) return cmd_duke_ghate(ctx, trace_flag);
    if (*main_thm) return cmd_main_theorem(ctx, which);
    if (*lcheck) return cmd_lcheck(ctx, k, l, m);
    if (*volume) return cmd_volume(ctx, terms, delta);
    if (*survey) return cmd_survey(ctx, d_max, terms, threads);
    if (*scan) return cmd_scan(ctx, m, k_max);
    err << "error: no subcommand\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CacheCorruption& e) {
    err << "error: cache corruption: " << e.what() << "\n";
    return kInternal;
  } catch (const TruncationError& e) {
    err << "error: insufficient truncation: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace hmf::cli
