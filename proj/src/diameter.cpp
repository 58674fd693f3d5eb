#include "kahler/diameter.hpp"

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "kahler/errors.hpp"

namespace kahler {

namespace {

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw DomainError(std::string(name) + " must be finite");
}

double mpq_to_double(const mpq_class& x) { return x.get_d(); }

}  // namespace

std::string_view to_string(DiameterMethod method) noexcept {
  switch (method) {
    case DiameterMethod::BonnetMyers: return "bonnet_myers";
    case DiameterMethod::FamilyAtK: return "family_at_k";
    case DiameterMethod::FamilyOptimized: return "family_optimized";
    case DiameterMethod::ClosedForm24m: return "closed_form_24m";
    case DiameterMethod::ClosedForm200: return "closed_form_200";
    case DiameterMethod::RayleighSolve: return "rayleigh_solve";
  }
  return "unknown";
}

double bonnet_myers_bound(const GeometryParams& g) {
  return std::numbers::pi * std::sqrt((2.0 * g.m() - 1.0) / g.rho());
}

double bakry_ledoux_bound(double p, double A) {
  require_finite(p, "p");
  require_finite(A, "A");
  if (!(p > 2.0)) throw DomainError("p must exceed 2");
  if (!(A > 0.0)) throw DomainError("A must be positive");
  return std::numbers::pi * std::sqrt(2.0 * p * A) / (p - 2.0);
}

KInterval admissible_k_interval(int m) {
  if (m < 2) throw DomainError("m must be >= 2");
  // Roots of (m-1)k^2 - 2(m+3)k + (m-1); their product is one.
  const double lo =
      (m - 1.0) / ((m + 3.0) + 2.0 * std::sqrt(2.0 * (m + 1.0)));
  return {lo, 1.0 / lo};
}

double fixed_family_k(int m) {
  if (m < 2) throw DomainError("m must be >= 2");
  return 1.0 - 1.0 / (2.0 * m);
}

DiameterBound family_bound(const GeometryParams& g, double k) {
  require_finite(k, "k");
  if (!(k > 0.0)) throw AdmissibilityError("k must be positive");
  const int m = g.m();
  const double kp1 = k + 1.0;
  if (!(4.0 * (m + 1.0) * k > (m - 1.0) * kp1 * kp1)) {
    throw AdmissibilityError("k = " + std::to_string(k) +
                             " gives p(k) <= 2; no diameter bound");
  }
  const double p = boundary_exponent(m, k);
  const double excess = boundary_exponent_excess(m, k);
  const double radicand = p * (m + (m - 1.0) * k) / (m * excess);
  const double value = std::numbers::pi / std::sqrt(g.rho()) * std::sqrt(radicand);
  return {DiameterMethod::FamilyAtK, value, {k, p, std::nullopt}, g};
}

DiameterBound closed_form_24m(const GeometryParams& g) {
  const double m = g.m();
  const double value = std::numbers::pi / std::sqrt(g.rho()) *
                       std::sqrt(2.0 * m - 1.0) * (1.0 - 1.0 / (24.0 * m));
  return {DiameterMethod::ClosedForm24m, value, {}, g};
}

DiameterBound optimize_family(const GeometryParams& g, double tol) {
  require_finite(tol, "tol");
  if (!(tol > 0.0 && tol <= 1e-6)) {
    throw DomainError("tol must lie in (0, 1e-6]");
  }
  const KInterval range = admissible_k_interval(g.m());
  const double lo = range.lo + 1e-9;
  const double hi = range.hi - 1e-9;
  auto objective = [&](double k) { return family_bound(g, k).value; };

  constexpr int kScan = 64;
  std::array<double, kScan> xs{};
  std::array<double, kScan> ys{};
  int best = 0;
  for (int i = 0; i < kScan; ++i) {
    xs[i] = lo + (hi - lo) * i / (kScan - 1);
    ys[i] = objective(xs[i]);
    if (ys[i] < ys[best]) best = i;
  }
  double best_k = xs[best];
  double best_value = ys[best];

  double a = xs[best > 0 ? best - 1 : 0];
  double b = xs[best < kScan - 1 ? best + 1 : kScan - 1];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  for (int iter = 0; iter < 200 && b - a > tol; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  for (const auto& [k, v] : {std::pair{c, fc}, std::pair{d, fd}}) {
    if (v < best_value) {
      best_value = v;
      best_k = k;
    }
  }
  DiameterBound out = family_bound(g, best_k);
  out.method = DiameterMethod::FamilyOptimized;
  return out;
}

Chain24mRow chain_24m_row(int m) {
  if (m < 2) throw DomainError("m must be >= 2");
  const mpq_class mm(m);
  const mpq_class one(1);
  const mpq_class u = one / (2 * mm);
  const mpq_class k = one - u;
  const mpq_class kp1 = k + 1;
  const mpq_class kp1_sq = kp1 * kp1;

  const mpq_class p = one + (mm + 1) / (mm - 1) * 4 * k / kp1_sq;
  const mpq_class excess = p - 2;
  const mpq_class excess_closed =
      (8 - 8 * u - (mm - 1) * u * u) / ((mm - 1) * kp1_sq);

  const mpq_class psi = 4 * (mm + 1) * (2 * mm - k) * k -
                        (2 * mm * mm + (mm - 1) * k) * kp1_sq;

  const mpq_class numer = p * (mm + (mm - 1) * k);
  const mpq_class radicand = numer / (mm * excess);
  const mpq_class shrink = one - one / (24 * mm);
  const mpq_class slack = (2 * mm - 1) * shrink * shrink - radicand;

  Chain24mRow row{};
  row.m = m;
  row.excess_positive = excess > 0 && excess == excess_closed;
  row.psi_at_least_two = psi >= 2;
  row.excess_scaled_bound = mm * excess * kp1_sq <= 8 * mm / (mm - 1);
  row.numerator_bound = numer <= 2 * mm * (2 * mm - 1) / (mm - 1);
  row.gain_bound = slack >= 0;
  row.psi = mpq_to_double(psi);
  row.gain_slack = mpq_to_double(slack);
  return row;
}

algebra::CheckReport chain_24m_check(int m_max) {
  if (m_max < 2) throw DomainError("m_max must be >= 2");
  algebra::CheckReport report;
  report.id = "chain-24m";
  report.description =
      "five-step inequality chain at k = 1 - 1/(2m), exact rationals";
  report.status = algebra::CheckStatus::Pass;
  double min_slack = 0.0;
  int first_failure = 0;
  for (int m = 2; m <= m_max; ++m) {
    const Chain24mRow row = chain_24m_row(m);
    if (m == 2 || row.gain_slack < min_slack) min_slack = row.gain_slack;
    if (!row.all() && first_failure == 0) first_failure = m;
  }
  report.min_value = min_slack;
  std::ostringstream detail;
  if (first_failure != 0) {
    report.status = algebra::CheckStatus::Fail;
    detail << "first failing m = " << first_failure;
  } else {
    detail << "all steps hold for m in [2, " << m_max << "]";
  }
  report.detail = detail.str();
  return report;
}

}  // namespace kahler
