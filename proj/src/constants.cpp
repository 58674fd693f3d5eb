#include "kahler/constants.hpp"

#include <cmath>
#include <string>

#include "kahler/errors.hpp"

namespace kahler {
namespace {

// The radicand has a square-root singularity at the critical exponent, so
// a p rounded by one ulp moves C_S by ~1e-8. Radicands within these
// fractions of their scale 2m(m+1) are taken to be exactly zero: below
// zero up to the input slack, above zero up to accumulated rounding.
constexpr double kRadicandTolerance = 1e-12;
constexpr double kRadicandRounding = 1e-14;
constexpr double kRelativeSlack = 1e-12;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + " must be finite");
  }
}

// (m+1)(2m - (m-1)p). Also equals (m+1)(m+1 - (m-1)(p-1)), the reduced
// discriminant of the quadratic for the optimal k.
double sobolev_radicand(int m, double p) {
  const double md = m;
  double radicand = (md + 1.0) * (2.0 * md - (md - 1.0) * p);
  const double scale = 2.0 * md * (md + 1.0);
  if (radicand >= -kRadicandTolerance * scale &&
      radicand <= kRadicandRounding * scale) {
    radicand = 0.0;
  }
  return radicand;
}

}  // namespace

GeometryParams::GeometryParams(int m, double rho) : m_(m), rho_(rho) {
  if (m < 2) {
    throw DomainError("complex dimension m must be >= 2, got " +
                      std::to_string(m));
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("Ricci lower bound rho must be positive and finite");
  }
}

double GeometryParams::critical_exponent() const noexcept {
  return 2.0 * m_ / (m_ - 1.0);
}

std::string_view to_string(ConstantFamily family) noexcept {
  switch (family) {
    case ConstantFamily::RiemannianSobolev: return "riemannian_sobolev";
    case ConstantFamily::KahlerSobolev: return "kahler_sobolev";
    case ConstantFamily::KahlerBeckner: return "kahler_beckner";
    case ConstantFamily::LogSobolev: return "log_sobolev";
    case ConstantFamily::Poincare: return "poincare";
    case ConstantFamily::PropositionC: return "proposition_c";
  }
  return "unknown";
}

bool ExponentRange::contains(double p) const noexcept {
  const bool above = lo_closed ? p >= lo : p > lo;
  const bool below = hi_closed ? p <= hi : p < hi;
  return above && below;
}

double riemannian_sobolev_constant(int n, double p, double rho) {
  require_finite(p, "p");
  if (n < 3) throw DomainError("dimension n must be >= 3");
  if (!(rho > 0.0)) throw DomainError("rho must be positive");
  const double critical = 2.0 * n / (n - 2.0);
  if (p < 2.0 || p > critical * (1.0 + kRelativeSlack)) {
    throw DomainError("p must lie in [2, 2n/(n-2)]");
  }
  return (n - 1.0) * (p - 2.0) / (n * rho);
}

double kahler_sobolev_constant(const GeometryParams& g, double p) {
  require_finite(p, "p");
  if (p < 2.0) throw DomainError("Sobolev exponent p must be >= 2");
  const double radicand = sobolev_radicand(g.m(), p);
  if (radicand < 0.0) {
    throw DomainError("p exceeds the critical exponent 2m/(m-1)");
  }
  const double m = g.m();
  return (p - 2.0) / ((p - 1.0) * 2.0 * m * g.rho()) *
         (2.0 * m + p + 1.0 - 2.0 * std::sqrt(radicand));
}

double kahler_beckner_constant(const GeometryParams& g, double p) {
  require_finite(p, "p");
  if (!(p > 1.0) || p > 2.0) {
    throw DomainError("Beckner exponent p must lie in (1, 2]");
  }
  const double m = g.m();
  return ((p - 1.0) / p) * 2.0 * m / (((m - 1.0) * p + 2.0) * g.rho());
}

double log_sobolev_constant(const GeometryParams& g) {
  const double m = g.m();
  return 2.0 * m / ((m + 1.0) * g.rho());
}

double boundary_exponent(int m, double k) {
  if (m < 2) throw DomainError("m must be >= 2");
  if (!(k > 0.0)) throw DomainError("k must be positive");
  const double kp1 = k + 1.0;
  return 1.0 + (m + 1.0) / (m - 1.0) * 4.0 * k / (kp1 * kp1);
}

double boundary_exponent_excess(int m, double k) {
  if (m < 2) throw DomainError("m must be >= 2");
  if (!(k > 0.0)) throw DomainError("k must be positive");
  const double kp1 = k + 1.0;
  const double denom = (m - 1.0) * kp1 * kp1;
  return (4.0 * (m + 1.0) * k - (m - 1.0) * kp1 * kp1) / denom;
}

double optimal_k_for_p(int m, double p) {
  require_finite(p, "p");
  if (m < 2) throw DomainError("m must be >= 2");
  if (!(p > 2.0)) throw DomainError("p must exceed 2");
  const double radicand = sobolev_radicand(m, p);
  if (radicand < 0.0) {
    throw DomainError("p exceeds 2m/(m-1); no real k exists");
  }
  // a k^2 + (2a - 4(m+1)) k + a = 0 with a = (p-1)(m-1). The roots multiply
  // to one, so the smaller is the reciprocal of the larger; this form avoids
  // cancellation near p = 2.
  const double a = (p - 1.0) * (m - 1.0);
  return a / (2.0 * (m + 1.0) - a + 2.0 * std::sqrt(radicand));
}

double proposition_c_constant(const GeometryParams& g, double p, double k) {
  require_finite(p, "p");
  require_finite(k, "k");
  if (!(p > 2.0)) throw DomainError("p must exceed 2");
  if (!(k > 0.0)) throw DomainError("k must be positive");
  const double limit = boundary_exponent(g.m(), k);
  if (p > limit * (1.0 + kRelativeSlack)) {
    throw AdmissibilityError("k is not admissible: p = " + std::to_string(p) +
                             " exceeds p(k) = " + std::to_string(limit));
  }
  const double m = g.m();
  return (m + (m - 1.0) * k) * (p - 2.0) / (2.0 * m * g.rho());
}

InequalityConstant evaluate_constant(ConstantFamily family,
                                     const GeometryParams& g, double p,
                                     std::optional<double> k) {
  if (k.has_value() != (family == ConstantFamily::PropositionC)) {
    throw DomainError("k must be given exactly for the proposition_c family");
  }
  const double crit = g.critical_exponent();
  switch (family) {
    case ConstantFamily::RiemannianSobolev:
      return {family, p, std::nullopt,
              riemannian_sobolev_constant(g.real_dimension(), p, g.rho()),
              {2.0, crit, true, true}};
    case ConstantFamily::KahlerSobolev:
      return {family, p, std::nullopt, kahler_sobolev_constant(g, p),
              {2.0, crit, true, true}};
    case ConstantFamily::KahlerBeckner:
      return {family, p, std::nullopt, kahler_beckner_constant(g, p),
              {1.0, 2.0, false, true}};
    case ConstantFamily::LogSobolev:
      return {family, 1.0, std::nullopt, log_sobolev_constant(g),
              {1.0, 1.0, true, true}};
    case ConstantFamily::Poincare:
      return {family, 2.0, std::nullopt, kahler_beckner_constant(g, 2.0),
              {2.0, 2.0, true, true}};
    case ConstantFamily::PropositionC:
      return {family, p, k, proposition_c_constant(g, p, *k),
              {2.0, boundary_exponent(g.m(), *k), false, true}};
  }
  throw DomainError("unknown constant family");
}

}  // namespace kahler
