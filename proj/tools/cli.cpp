#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "kahler/coeff_algebra.hpp"
#include "kahler/constants.hpp"
#include "kahler/diameter.hpp"
#include "kahler/errors.hpp"
#include "kahler/model_check.hpp"
#include "kahler/rayleigh.hpp"

#ifndef KAHLER_VERSION
#define KAHLER_VERSION "0.0.0"
#endif

namespace kahler::cli {

namespace {

struct Globals {
  std::uint64_t seed = 0;
  double tol = 1e-10;
  int quad_order = 64;
  std::string format = "json";
};

struct Outcome {
  Json report;
  int exit_code = kExitOk;
  // Preformatted body that replaces the JSON rendering (table without --out).
  std::optional<std::string> raw;
};

Json new_report(const std::string& command, Json inputs) {
  Json r;
  r["command"] = command;
  r["version"] = KAHLER_VERSION;
  r["status"] = "pass";
  r["inputs"] = std::move(inputs);
  r["results"] = Json::array();
  return r;
}

Json global_inputs(const Globals& g) {
  Json in;
  in["seed"] = g.seed;
  in["tol"] = number(g.tol);
  in["quad_order"] = g.quad_order;
  in["format"] = g.format;
  return in;
}

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number()) return format_number(v.get<double>());
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return s;
}

std::string render_csv(const Json& rows) {
  std::vector<std::string> columns;
  for (const Json& row : rows) {
    for (const auto& item : row.items()) {
      if (std::find(columns.begin(), columns.end(), item.key()) == columns.end()) {
        columns.push_back(item.key());
      }
    }
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    os << (i ? "," : "") << columns[i];
  }
  os << "\n";
  for (const Json& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      os << (i ? "," : "");
      if (row.contains(columns[i])) os << csv_cell(row[columns[i]]);
    }
    os << "\n";
  }
  return os.str();
}

// ---- constants -----------------------------------------------------------

struct ConstantsArgs {
  int m = 0;
  double rho = 1.0;
  double p = 0.0;
};

Outcome cmd_constants(const ConstantsArgs& a, const Globals& g) {
  Json in = global_inputs(g);
  in["m"] = a.m;
  in["rho"] = number(a.rho);
  in["p"] = number(a.p);
  Outcome out{new_report("constants", std::move(in)), kExitOk, std::nullopt};
  Json& results = out.report["results"];

  const GeometryParams geometry(a.m, a.rho);
  const double crit = geometry.critical_exponent();
  if (a.p < 2.0) {
    results.push_back({{"label", "kahler_beckner"},
                       {"value", number(kahler_beckner_constant(geometry, a.p))},
                       {"p_range", "(1, 2]"}});
  } else if (a.p == 2.0) {
    results.push_back({{"label", "poincare"},
                       {"value", number(kahler_beckner_constant(geometry, 2.0))},
                       {"p_range", "p = 2"}});
  } else {
    const double cs = kahler_sobolev_constant(geometry, a.p);
    const double base =
        riemannian_sobolev_constant(geometry.real_dimension(), a.p, a.rho);
    results.push_back({{"label", "kahler_sobolev"},
                       {"value", number(cs)},
                       {"p_range", "[2, " + format_number(crit) + "]"}});
    results.push_back({{"label", "riemannian_sobolev"},
                       {"value", number(base)},
                       {"p_range", "[2, " + format_number(crit) + "]"}});
    results.push_back({{"label", "improvement_ratio"},
                       {"value", number(cs / base)},
                       {"p_range", nullptr}});
  }
  return out;
}

// ---- diameter ------------------------------------------------------------

struct DiameterArgs {
  int m = 0;
  std::optional<double> rho;
  std::string method = "all";
  std::optional<double> k;
};

Json bound_record(const std::string& name, const DiameterBound& b,
                  double value) {
  Json r;
  r["method"] = name;
  r["value"] = number(value);
  r["k"] = b.params.k ? number(*b.params.k) : Json(nullptr);
  r["p"] = b.params.p ? number(*b.params.p) : Json(nullptr);
  r["d_star"] = b.params.d_star ? number(*b.params.d_star) : Json(nullptr);
  return r;
}

// Rescales a bound proved for Ric >= 2m-1 to Ric >= rho.
double rescale(int m, double rho) { return std::sqrt((2.0 * m - 1.0) / rho); }

Json compute_bound(const std::string& method, const GeometryParams& geometry,
                   std::optional<double> k, double tol) {
  const int m = geometry.m();
  const double rho = geometry.rho();
  if (method == "bonnet-myers") {
    const double v = bonnet_myers_bound(geometry);
    return bound_record(method, {DiameterMethod::BonnetMyers, v, {}, geometry}, v);
  }
  if (method == "family") {
    const DiameterBound b = family_bound(geometry, k.value_or(fixed_family_k(m)));
    return bound_record(method, b, b.value);
  }
  if (method == "family-opt") {
    const DiameterBound b = optimize_family(geometry, std::min(tol, 1e-6));
    return bound_record(method, b, b.value);
  }
  if (method == "closed-24m") {
    const DiameterBound b = closed_form_24m(geometry);
    return bound_record(method, b, b.value);
  }
  if (method == "closed-200") {
    const DiameterBound b = closed_form_200(m);
    return bound_record(method, b, b.value * rescale(m, rho));
  }
  if (method == "rayleigh") {
    const DiameterBound b = solve_max_diameter(m, tol);
    return bound_record(method, b, b.value * rescale(m, rho));
  }
  throw DomainError("unknown method '" + method + "'");
}

Outcome cmd_diameter(const DiameterArgs& a, const Globals& g) {
  const double rho = a.rho.value_or(2.0 * a.m - 1.0);
  Json in = global_inputs(g);
  in["m"] = a.m;
  in["rho"] = number(rho);
  in["method"] = a.method;
  in["k"] = a.k ? number(*a.k) : Json(nullptr);
  Outcome out{new_report("diameter", std::move(in)), kExitOk, std::nullopt};
  const GeometryParams geometry(a.m, rho);
  Json& results = out.report["results"];

  if (a.method != "all") {
    results.push_back(compute_bound(a.method, geometry, a.k, g.tol));
    return out;
  }
  static const std::vector<std::string> methods = {
      "bonnet-myers", "family", "family-opt", "closed-24m", "closed-200",
      "rayleigh"};
  std::size_t best = 0;
  std::vector<Json> records;
  for (const std::string& method : methods) {
    records.push_back(compute_bound(method, geometry, a.k, g.tol));
    if (records.back()["value"].get<double>() <
        records[best]["value"].get<double>()) {
      best = records.size() - 1;
    }
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i]["minimum"] = (i == best);
    results.push_back(records[i]);
  }
  out.report["best"] = methods[best];
  return out;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::optional<int> m_max;
};

struct Tally {
  int asserted = 0;
  int failed = 0;

  const char* record(bool pass) {
    ++asserted;
    if (!pass) ++failed;
    return pass ? "pass" : "fail";
  }
};

void verify_identities(Json& results, Tally& tally, int m_max) {
  for (const std::string& id : algebra::identity_catalog()) {
    const algebra::CheckReport r = algebra::verify_identity(id);
    Json rec;
    rec["suite"] = "identities";
    rec["id"] = r.id;
    rec["status"] = tally.record(r.passed());
    rec["description"] = r.description;
    rec["detail"] = r.detail;
    rec["residual"] = r.residual.to_string();
    results.push_back(rec);
  }
  const algebra::CheckReport e = algebra::check_e_nonneg(m_max, 10.0, 41);
  Json rec;
  rec["suite"] = "identities";
  rec["id"] = "E_nonneg";
  rec["status"] = tally.record(e.passed());
  rec["description"] = e.description;
  rec["detail"] = e.detail;
  rec["residual"] = "0";
  results.push_back(rec);
}

void verify_chain_24m(Json& results, Tally& tally, int m_max) {
  const algebra::CheckReport r = chain_24m_check(m_max);
  Json rec;
  rec["suite"] = "chain-24m";
  rec["id"] = r.id;
  rec["status"] = tally.record(r.passed());
  rec["m_max"] = m_max;
  rec["detail"] = r.detail;
  rec["min_gain_slack"] = number(r.min_value.value_or(0.0));
  results.push_back(rec);

  // Spot check at m = 2 with rho = 2m - 1 = 3.
  const GeometryParams g3(2, 3.0);
  const double fam = family_bound(g3, fixed_family_k(2)).value;
  const double closed = closed_form_24m(g3).value;
  Json spot;
  spot["suite"] = "chain-24m";
  spot["id"] = "family_vs_closed_24m_m2";
  spot["status"] = tally.record(fam <= closed);
  spot["family_at_k"] = number(fam);
  spot["closed_24m"] = number(closed);
  results.push_back(spot);
}

Json chain_record(const ChainReport& r) {
  Json rec;
  rec["m"] = r.m;
  rec["epsilon"] = number(r.epsilon);
  rec["in_hypothesis"] = r.in_hypothesis;
  rec["steps_hold"] = r.steps_hold();
  rec["contradiction"] = r.contradiction;
  Json failed = Json::array();
  for (const ChainStep& s : r.steps) {
    if (!s.pass) failed.push_back(s.name);
  }
  rec["failed_steps"] = failed;
  return rec;
}

void verify_chain_200(Json& info, Json& results, Tally& tally, int m_max) {
  for (int m = 2; m <= 3; ++m) {
    Json rec = chain_record(replay_chain(m, 0.5 * chain_epsilon_threshold(m)));
    rec["note"] =
        "final comparison 2(2m-1) > (3/2)(1+eps)^2(2m+1) cannot hold for "
        "m < 4; reported, not asserted";
    info.push_back(rec);
  }
  for (int m = 4; m <= m_max; ++m) {
    const ChainReport r = replay_chain(m, 0.5 * chain_epsilon_threshold(m));
    Json rec;
    rec["suite"] = "chain-200";
    rec["id"] = "replay_m" + std::to_string(m);
    rec["status"] = tally.record(r.steps_hold() && r.contradiction);
    const Json fields = chain_record(r);
    for (const auto& item : fields.items()) rec[item.key()] = item.value();
    results.push_back(rec);
  }
}

void verify_model(Json& results, Tally& tally, const Globals& g) {
  SuiteOptions options;
  options.seed = g.seed;
  options.spec = ManifoldSpec{1.0, g.quad_order};
  int checks = 0;
  int violations = 0;
  for (ModelSuite suite : {ModelSuite::Beckner, ModelSuite::Sobolev}) {
    const SuiteResult r = run_model_suite(suite, options);
    checks += r.checks;
    violations += r.violations;
    Json rec;
    rec["suite"] = "model";
    rec["id"] = to_string(suite);
    rec["status"] = tally.record(r.violations == 0);
    rec["checks"] = r.checks;
    rec["evaluations"] = r.evaluations;
    rec["violations"] = r.violations;
    rec["below_tolerance"] = r.below_tolerance;
    rec["min_margin"] = number(r.min_margin);
    rec["max_ratio"] = number(r.max_ratio);
    results.push_back(rec);
  }

  const ModelSpace unit(ManifoldSpec{1.0, g.quad_order});
  const ZonalFunction one = ZonalFunction::constant(1.0);
  const ZonalFunction x = ZonalFunction::polynomial({0.0, 1.0});
  const double poincare = check_poincare(unit, {x, one});
  Json pe;
  pe["suite"] = "model";
  pe["id"] = "poincare_equality";
  pe["status"] = tally.record(std::abs(poincare) <= 1e-9);
  pe["margin"] = number(poincare);
  results.push_back(pe);

  const Lambda1Report l1 = check_lambda1(ModelSpace(ManifoldSpec{3.0, g.quad_order}));
  Json lr;
  lr["suite"] = "model";
  lr["id"] = "lambda1_rho3";
  lr["status"] =
      tally.record(l1.matches && std::abs(l1.first_quotient - l1.eigenvalue_bound) <= 1e-8);
  lr["first_quotient"] = number(l1.first_quotient);
  lr["product_quotient"] = number(l1.product_quotient);
  lr["eigenvalue_bound"] = number(l1.eigenvalue_bound);
  results.push_back(lr);

  Json total;
  total["suite"] = "model";
  total["id"] = "random_suites_total";
  total["status"] = tally.record(violations == 0);
  total["checks"] = checks;
  total["violations"] = violations;
  results.push_back(total);
}

Outcome cmd_verify(const VerifyArgs& a, const Globals& g) {
  Json in = global_inputs(g);
  in["suite"] = a.suite;
  in["m_max"] = a.m_max ? Json(*a.m_max) : Json(nullptr);
  Outcome out{new_report("verify", std::move(in)), kExitOk, std::nullopt};
  if (a.m_max && *a.m_max < 2) throw DomainError("m-max must be >= 2");
  Json results = Json::array();
  Json info = Json::array();
  Tally tally;
  const bool all = a.suite == "all";
  if (all || a.suite == "identities") {
    verify_identities(results, tally, a.m_max.value_or(50));
  }
  if (all || a.suite == "chain-24m") {
    verify_chain_24m(results, tally, a.m_max.value_or(10000));
  }
  if (all || a.suite == "chain-200") {
    verify_chain_200(info, results, tally, a.m_max.value_or(50));
  }
  if (all || a.suite == "model") verify_model(results, tally, g);

  out.report["results"] = std::move(results);
  if (!info.empty()) out.report["informational"] = std::move(info);
  out.report["summary"] = {{"asserted", tally.asserted},
                           {"passed", tally.asserted - tally.failed},
                           {"failed", tally.failed}};
  out.exit_code = verify_exit_code(tally.failed);
  if (out.exit_code != kExitOk) out.report["status"] = "fail";
  return out;
}

// ---- table ---------------------------------------------------------------

struct TableArgs {
  std::string m_range = "2:10";
  std::string rho_mode = "ric2m1";
  std::string out_path;
};

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw DomainError("m-range must look like 2:50");
  try {
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    const std::string lo_text = text.substr(0, colon);
    const std::string hi_text = text.substr(colon + 1);
    const int lo = std::stoi(lo_text, &used_lo);
    const int hi = std::stoi(hi_text, &used_hi);
    if (used_lo != lo_text.size() || used_hi != hi_text.size()) {
      throw std::invalid_argument("trailing characters");
    }
    if (lo < 2 || hi < lo) throw DomainError("m-range needs 2 <= lo <= hi");
    return {lo, hi};
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw DomainError("m-range must look like 2:50");
  }
}

const std::vector<std::string>& table_columns() {
  static const std::vector<std::string> cols = {
      "m", "bonnet_myers", "family_at_k", "family_opt", "closed_24m",
      "rayleigh_solve", "closed_200", "best"};
  return cols;
}

Outcome cmd_table(const TableArgs& a, const Globals& g) {
  Json in = global_inputs(g);
  in["m_range"] = a.m_range;
  in["rho_mode"] = a.rho_mode;
  in["out"] = a.out_path.empty() ? Json(nullptr) : Json(a.out_path);
  Outcome out{new_report("table", std::move(in)), kExitOk, std::nullopt};
  const auto [lo, hi] = parse_range(a.m_range);

  std::ostringstream csv;
  const auto& cols = table_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) csv << (i ? "," : "") << cols[i];
  csv << "\n";
  for (int m = lo; m <= hi; ++m) {
    const double rho = a.rho_mode == "unit" ? 1.0 : 2.0 * m - 1.0;
    const GeometryParams geometry(m, rho);
    const double scale = rescale(m, rho);
    const std::vector<double> values = {
        bonnet_myers_bound(geometry),
        family_bound(geometry, fixed_family_k(m)).value,
        optimize_family(geometry, std::min(g.tol, 1e-6)).value,
        closed_form_24m(geometry).value,
        solve_max_diameter(m, g.tol).value * scale,
        closed_form_200(m).value * scale};
    const double best = *std::min_element(values.begin(), values.end());
    csv << m;
    for (double v : values) csv << "," << format_number(v);
    csv << "," << format_number(best) << "\n";
  }

  const std::string body = csv.str();
  if (a.out_path.empty()) {
    out.raw = body;
    return out;
  }
  std::ofstream file(a.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + a.out_path + "' for writing");
  file << body;
  file.close();
  if (!file) throw IoError("failed writing '" + a.out_path + "'");
  out.report["results"].push_back({{"path", a.out_path},
                                   {"rows", hi - lo + 1},
                                   {"columns", cols}});
  return out;
}

// ---- rendering and dispatch ------------------------------------------------

void emit(const Outcome& o, const Globals& g, std::ostream& out) {
  if (o.raw) {
    out << *o.raw;
    return;
  }
  if (g.format == "csv") {
    Json rows = o.report["results"];
    if (o.report.contains("informational")) {
      for (Json rec : o.report["informational"]) {
        rec["status"] = "info";
        rows.push_back(rec);
      }
    }
    out << render_csv(rows);
    return;
  }
  out << o.report.dump(2) << "\n";
}

int fail(const std::string& command, const Globals& g, const std::string& message,
         int code, std::ostream& out, std::ostream& err) {
  Json r = new_report(command, global_inputs(g));
  r["status"] = "fail";
  r["message"] = message;
  r["exit_code"] = code;
  out << r.dump(2) << "\n";
  err << "kahler-cert: " << message << "\n";
  return code;
}

}  // namespace

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  double rounded = std::strtod(buf, nullptr);
  if (rounded == 0.0) rounded = 0.0;
  return rounded;
}

std::string format_number(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int verify_exit_code(int failed) noexcept {
  return failed > 0 ? kExitVerifyFailed : kExitOk;
}

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const SolverError*>(&e)) return kExitSolver;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const std::ios_base::failure*>(&e)) return kExitIo;
  if (dynamic_cast<const std::invalid_argument*>(&e)) return kExitDomain;
  if (dynamic_cast<const std::domain_error*>(&e)) return kExitDomain;
  return kExitSolver;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Certified constants and diameter bounds for compact Kähler "
               "manifolds with positive Ricci curvature"};
  app.name("kahler-cert");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "PRNG seed for the model suites")
      ->capture_default_str();
  app.add_option("--tol", g.tol, "solver tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--quad-order", g.quad_order, "Gauss–Legendre nodes per factor")
      ->capture_default_str();
  app.add_option("--format", g.format, "json or csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));

  ConstantsArgs ca;
  auto* constants = app.add_subcommand("constants", "Sobolev-type constants");
  constants->add_option("--m", ca.m, "complex dimension")->required();
  constants->add_option("--rho", ca.rho, "Ricci lower bound")->capture_default_str();
  constants->add_option("--p", ca.p, "exponent")->required();

  DiameterArgs da;
  auto* diameter = app.add_subcommand("diameter", "diameter upper bounds");
  diameter->add_option("--m", da.m, "complex dimension")->required();
  diameter->add_option("--rho", da.rho, "Ricci lower bound (default 2m-1)");
  diameter->add_option("--method", da.method, "bound to compute")
      ->capture_default_str()
      ->check(CLI::IsMember({"bonnet-myers", "family", "family-opt",
                             "closed-24m", "closed-200", "rayleigh", "all"}));
  diameter->add_option("--k", da.k, "family parameter (default 1 - 1/(2m))");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", va.suite, "suite to run")
      ->capture_default_str()
      ->check(CLI::IsMember({"identities", "chain-24m", "chain-200", "model", "all"}));
  verify->add_option("--m-max", va.m_max, "largest m swept");

  TableArgs ta;
  auto* table = app.add_subcommand("table", "diameter comparison table (CSV)");
  table->add_option("--m-range", ta.m_range, "lo:hi")->capture_default_str();
  table->add_option("--rho-mode", ta.rho_mode, "unit or ric2m1")
      ->capture_default_str()
      ->check(CLI::IsMember({"unit", "ric2m1"}));
  table->add_option("--out", ta.out_path, "CSV output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }
  if (g.quad_order < 32) {
    return fail(app.get_subcommands().front()->get_name(), g,
                "quad-order must be >= 32", kExitDomain, out, err);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Outcome o;
    if (*constants) o = cmd_constants(ca, g);
    else if (*diameter) o = cmd_diameter(da, g);
    else if (*verify) o = cmd_verify(va, g);
    else o = cmd_table(ta, g);
    emit(o, g, out);
    return o.exit_code;
  } catch (const std::exception& e) {
    return fail(command, g, e.what(), exit_code_for(e), out, err);
  }
}

}  // namespace kahler::cli
