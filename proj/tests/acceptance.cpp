// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fail.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "kahler/coeff_algebra.hpp"
#include "kahler/constants.hpp"
#include "kahler/diameter.hpp"
#include "kahler/model_check.hpp"
#include "kahler/rayleigh.hpp"

using namespace kahler;

namespace {

constexpr double kPi = std::numbers::pi;

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome exact_identities() {
  for (const std::string& id : algebra::identity_catalog()) {
    if (!algebra::verify_identity(id).passed()) return {false, id + " failed"};
  }
  return {true, "I1-I13 zero residual; I13 swept to m = 10^6"};
}

Outcome poincare_constant() {
  double worst = 0.0;
  for (int m = 2; m <= 100; ++m) {
    for (double rho : {0.5, 1.0, 3.0}) {
      const double c = kahler_beckner_constant(GeometryParams(m, rho), 2.0);
      worst = std::max(worst, rel_diff(c, 1.0 / (2.0 * rho)));
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max rel err %.3g", worst);
  return {worst <= 1e-15, buf};
}

Outcome critical_exponent() {
  double worst = 0.0;
  double worst_ratio = 0.0;
  for (int m = 2; m <= 100; ++m) {
    const GeometryParams g(m, 1.0);
    const double crit = g.critical_exponent();
    worst = std::max(worst, rel_diff(kahler_sobolev_constant(g, crit),
                                     riemannian_sobolev_constant(2 * m, crit, 1.0)));
    const double mid = 0.5 * (2.0 + crit);
    worst_ratio = std::max(worst_ratio, kahler_sobolev_constant(g, mid) /
                                            riemannian_sobolev_constant(2 * m, mid, 1.0));
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max rel err %.3g, max midpoint ratio %.9f", worst, worst_ratio);
  return {worst <= 1e-12 && worst_ratio < 1.0 - 1e-6, buf};
}

Outcome chain_24m() {
  const algebra::CheckReport r = chain_24m_check(10000);
  bool below = true;
  for (int m = 2; m <= 10000 && below; ++m) {
    const GeometryParams g(m, 2.0 * m - 1.0);
    below = family_bound(g, fixed_family_k(m)).value <= kPi * (1.0 - 1.0 / (24.0 * m));
  }
  const double fam = family_bound(GeometryParams(2, 3.0), 0.75).value;
  const double closed = closed_form_24m(GeometryParams(2, 3.0)).value;
  // Exact family value at m = 2 is pi sqrt(2123/2280) = 3.0314991184.
  const bool spot = std::abs(fam - 3.0314991184) <= 1e-5 &&
                    std::abs(closed - 3.076142) <= 1e-5 && fam <= closed;
  char buf[128];
  std::snprintf(buf, sizeof buf, "sweep %s, m=2: %.7f <= %.7f", r.passed() && below ? "ok" : "bad",
                fam, closed);
  return {r.passed() && below && spot, buf};
}

Outcome recovers_bonnet_myers() {
  double worst = 0.0;
  for (int m = 2; m <= 50; ++m) {
    for (double rho : {1.0, 2.0 * m - 1.0}) {
      const GeometryParams g(m, rho);
      worst = std::max(worst, rel_diff(family_bound(g, 1.0).value,
                                       kPi * std::sqrt((2.0 * m - 1.0) / rho)));
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max rel err %.3g", worst);
  return {worst <= 1e-14, buf};
}

Outcome rayleigh_pipeline() {
  double worst_margin = 0.0;
  for (int m = 2; m <= 50; ++m) {
    if (!(prop_p_margin(m, kPi) < 0.0)) return {false, "margin(pi) >= 0 at m=" + std::to_string(m)};
    if (!(prop_p_margin(m, 0.5) > 0.0)) return {false, "margin(0.5) <= 0 at m=" + std::to_string(m)};
    const RayleighSolve s = solve_max_diameter_detailed(m, 1e-12);
    if (!(s.d_star < kPi)) return {false, "d* = pi at m=" + std::to_string(m)};
    worst_margin = std::max(worst_margin, std::abs(s.margin));
  }
  const double anchor = std::abs(rayleigh_ratio(2, kPi).value - 4.0);
  char buf[128];
  std::snprintf(buf, sizeof buf, "max |margin(d*)| %.3g, |ratio(pi) - 4| %.3g", worst_margin,
                anchor);
  return {worst_margin <= 1e-8 && anchor <= 1e-10, buf};
}

Outcome backend_agreement() {
  double worst = 0.0;
  for (double theta : {kPi / 8, kPi / 4, kPi / 2, 3 * kPi / 4, 0.98 * kPi}) {
    for (int n = 0; n <= 201; ++n) {
      worst = std::max(worst,
                       rel_diff(sin_power_integral(n, theta, IntegralBackend::Recurrence).value,
                                sin_power_integral(n, theta, IntegralBackend::Quadrature).value));
    }
  }
  double wallis = 0.0;
  for (int m = 1; m <= 80; ++m) {
    wallis = std::max(wallis, rel_diff(wallis_factor(m).get_d(),
                                       sin_power_integral(2 * m + 1, kPi / 2).value));
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "backends %.3g, wallis %.3g", worst, wallis);
  return {worst <= 1e-10 && wallis <= 1e-12, buf};
}

Outcome chain_replay() {
  for (int m = 4; m <= 50; ++m) {
    const ChainReport r = replay_chain(m, 0.5 * chain_epsilon_threshold(m));
    if (!r.steps_hold() || !r.contradiction) {
      return {false, "chain breaks at m=" + std::to_string(m)};
    }
  }
  std::string note;
  for (int m : {2, 3}) {
    const ChainReport r = replay_chain(m, 0.5 * chain_epsilon_threshold(m));
    note += " m=" + std::to_string(m) + (r.contradiction ? " contradicts" : " no contradiction");
  }
  return {true, "m=4..50 contradict; informational:" + note};
}

Outcome model_suite() {
  SuiteOptions options;
  options.seed = 0;
  const SuiteResult b = run_model_suite(ModelSuite::Beckner, options);
  const SuiteResult s = run_model_suite(ModelSuite::Sobolev, options);
  const ModelSpace unit(ManifoldSpec{1.0, 64});
  const ProductFunction first{ZonalFunction::polynomial({0.0, 1.0}), ZonalFunction::constant(1.0)};
  const double poincare = std::abs(check_poincare(unit, first));
  const Lambda1Report l = check_lambda1(ModelSpace(ManifoldSpec{3.0, 64}));
  const int checks = b.checks + s.checks;
  const int violations = b.violations + s.violations;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d checks, %d violations, poincare %.3g, lambda1 %.12f", checks,
                violations, poincare, l.first_quotient);
  return {checks == 400 && violations == 0 && poincare <= 1e-9 &&
              std::abs(l.first_quotient - 6.0) <= 1e-8,
          buf};
}

Outcome determinism() {
  const std::vector<std::string> args{"verify", "--suite", "all", "--seed", "7"};
  std::ostringstream a, b, ea, eb;
  const int ca = cli::run_cli(args, a, ea);
  const int cb = cli::run_cli(args, b, eb);
  const bool same = a.str() == b.str() && !a.str().empty();
  return {same && ca == cli::kExitOk && cb == cli::kExitOk,
          same ? "byte-identical, " + std::to_string(a.str().size()) + " bytes" : "reports differ"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact identity suite", exact_identities},
      {"Poincare constant 1/(2 rho)", poincare_constant},
      {"critical-exponent agreement and strict improvement", critical_exponent},
      {"1/(24m) diameter chain", chain_24m},
      {"family recovers Bonnet-Myers", recovers_bonnet_myers},
      {"Rayleigh pipeline", rayleigh_pipeline},
      {"quadrature/recurrence cross-validation", backend_agreement},
      {"chain replay", chain_replay},
      {"model-space inequality suite", model_suite},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("Criterion %zu: %s - %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str());
  }
  return failed == 0 ? 0 : 1;
}
