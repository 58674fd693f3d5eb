#include "kahler/coeff_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <utility>

#include "kahler/constants.hpp"
#include "kahler/errors.hpp"

namespace kahler::algebra {
namespace {

using Builder = RationalFunction (*)();

RationalFunction M() { return var(Var::m); }
RationalFunction K() { return var(Var::k); }
RationalFunction Q() { return var(Var::q); }
RationalFunction A() { return var(Var::a); }
RationalFunction R() { return var(Var::r); }
RationalFunction P() { return var(Var::p); }
RationalFunction S() { return var(Var::sigma); }

RationalFunction half(const RationalFunction& x) { return rational(1, 2) * x; }

RationalFunction expr_A() {
  return ((M() + 1) / M() * A() * K() + (1 - K()) * Q()).assume("m != 0");
}

RationalFunction expr_B() {
  const auto m = M(), k = K(), q = Q(), a = A();
  return (half((m - 1) / m + k) * k * a.pow(2) +
          (half(q) * (1 - k) + (1 - q)) * k * a +
          rational(1, 8) * (1 - k).pow(2) * q.pow(2) +
          half((1 - k) * q * (1 - q)))
      .assume("m != 0");
}

// Laplacian-squared coefficient.
RationalFunction expr_A1() {
  return 2 * (M() + 1) * A() * K() - (1 + 2 * K()) * M() * Q();
}

RationalFunction expr_B1() {
  const auto m = M(), k = K(), q = Q(), a = A();
  return ((m - 1) + m * k) * k * a.pow(2) + (2 - (k + 1) * q) * m * k * a +
         m / 4 * (1 - k).pow(2) * q.pow(2) + k * m * q * (q - 1);
}

// Hessian-squared coefficient.
RationalFunction expr_A2() {
  const auto m = M(), k = K(), q = Q(), a = A();
  return 2 * (m + 1) * a * k + half((1 - k) * m * q) - rational(3, 2) * k * q;
}

RationalFunction expr_B2() {
  const auto m = M(), k = K(), q = Q(), a = A();
  return ((m - 1) + m * k) * k * a.pow(2) + (2 - (k + 1) * q) * m * k * a +
         m / 4 * (1 - k).pow(2) * q.pow(2) +
         q * (q - 1) / 2 * (m * (k - 1) + k);
}

// Quadratic in r closing the Sobolev estimate.
RationalFunction expr_Theta() {
  const auto m = M(), k = K(), p = P(), r = R();
  return -4 * k * m * (m + 1) * (p - 1) * r +
         (p - 1).pow(2) * (m + (m - 1) * k) * (m * k + (m - 1)) * r.pow(2) -
         4 * k * (m + 1).pow(2) * (r - 1) * (r * (p - 2) + 1);
}

RationalFunction expr_c0() {
  const auto m = M(), k = K(), p = P();
  return (p - 1).pow(2) * (m + (m - 1) * k) * (m * k + (m - 1)) -
         4 * k * (m + 1).pow(2) * (p - 2);
}

RationalFunction expr_c1() {
  return -4 * K() * (M() + 1) * (2 * M() + 3 - P());
}

RationalFunction expr_c2() { return 4 * K() * (M() + 1).pow(2); }

RationalFunction expr_boundary_p() {
  const auto m = M(), k = K();
  return (1 + (m + 1) / (m - 1) * 4 * k / (k + 1).pow(2))
      .assume("m != 1")
      .assume("k != -1");
}

// Discriminant cofactor, factored form.
RationalFunction expr_Q() {
  const auto m = M(), k = K(), p = P();
  return m * (m - 1) * (k + 1).pow(2) * (p - 1) *
         (1 + (m + 1) / (m - 1) * 4 * k / (k + 1).pow(2) - p)
             .assume("m != 1")
             .assume("k != -1");
}

// Discriminant cofactor, expanded form.
RationalFunction expr_Q_expanded() {
  const auto m = M(), k = K(), p = P();
  return k * (2 * m + 3 - p).pow(2) -
         (p - 1).pow(2) * (m + (m - 1) * k) * (m * k + (m - 1)) +
         4 * k * (m + 1).pow(2) * (p - 2);
}

RationalFunction expr_F() {
  const auto m = M(), k = K(), p = P(), r = R(), a = A();
  return (a * k + a.pow(2) * k / (2 * m) * (m * k + (m - 1)) +
          (r - 1) * (r * (p - 2) + 1) / (r * (p - 1)) * a * (m + 1) * k / m)
      .assume("r != 0")
      .assume("p != 1")
      .assume("m != 0");
}

RationalFunction expr_a_sobolev() {
  const auto m = M(), k = K(), p = P(), r = R();
  return (-(p - 1) * r * (m + (m - 1) * k) / (2 * (m + 1) * k))
      .assume("k != 0");
}

RationalFunction expr_b_sub() {
  return K() * A() + (1 - K()) * Q() / 2;
}

// (e7)
RationalFunction expr_a_beckner() {
  const auto m = M(), k = K(), q = Q();
  return (3 * q / (4 * (m + 1)) - m / (4 * (m + 1)) * (1 - k) / k * q)
      .assume("k != 0");
}

// (e10)
RationalFunction expr_a_sigma() {
  const auto m = M(), q = Q(), s = S();
  return 3 * q / (4 * (m + 1)) - m / (2 * (m + 1)) * s;
}

// (e9), solved for k.
RationalFunction expr_k_sigma() {
  return (Q() / (Q() + 2 * S())).assume("q + 2*sigma != 0");
}

// B3 as first defined, with a still free.
RationalFunction expr_B3_general() {
  const auto m = M(), q = Q(), s = S(), a = A();
  return (((2 * m - 1) + 2 * (m - 1) / q * s) * a.pow(2) +
          2 * ((1 - q) + (2 / q - 1) * s) * m * a + m * s.pow(2) +
          (q - 1) / 2 * (q - 2 * (m - 1) * s - 4 / q * m * s.pow(2)))
      .assume("q != 0");
}

// B3 after a is fixed by (e10): the four-term sigma expansion.
RationalFunction expr_B3() {
  const auto m = M(), q = Q(), s = S();
  const auto mp1sq = (m + 1).pow(2);
  return ((2 * m - 1) * q / (16 * mp1sq) * (8 * (m + 1) - (8 * m - 1) * q) +
          (3 * m - 1) / (8 * mp1sq) * (8 * (m + 1) - (8 * m - 1) * q) * s +
          m / (4 * mp1sq) * ((2 * m.pow(2) - 11 * m + 2) + 8 * (m + 1) / q) *
              s.pow(2) +
          m.pow(2) * (m - 1) / (2 * mp1sq * q) * s.pow(3))
      .assume("q != 0");
}

// (1 + 2 sigma/q)(2m - 1 + 2m sigma/q)
RationalFunction expr_D() {
  const auto m = M(), q = Q(), s = S();
  return (1 + 2 * s / q) * (2 * m - 1 + 2 * m * s / q);
}

RationalFunction expr_Upsilon() {
  return Q() - 2 * expr_B3() / expr_D();
}

RationalFunction expr_E() {
  const auto m = M(), q = Q(), s = S();
  return ((2 * m - 1) * q * (8 * m * (m + 1) + (8 * m - 1) * q) +
          2 * (3 * m - 1) * (8 * m * (m + 1) + (8 * m - 1) * q) * s +
          4 * m * (8 * m * (m + 1) / q - (2 * m.pow(2) - 11 * m + 2)) *
              s.pow(2) -
          8 * m.pow(2) * (m - 1) / q * s.pow(3))
      .assume("q != 0");
}

// p left free.
RationalFunction expr_S() {
  const auto m = M(), k = K(), p = P();
  return m * (2 * m - 1) * (p - 2) - p * (m + (m - 1) * k);
}

// Before substituting p = p(k).
RationalFunction expr_Omega_expanded() {
  const auto m = M(), k = K();
  return 4 * m * (2 * m - 1) * (m + 1) * k -
         m * (2 * m - 1) * (m - 1) * (k + 1).pow(2) -
         4 * (m + (m - 1) * k) * (m + 1) * k -
         (m + (m - 1) * k) * (m - 1) * (k + 1).pow(2);
}

RationalFunction expr_Omega() {
  const auto m = M(), k = K();
  return 4 * (m + 1) * (m - 1) * (2 * m - k) * k -
         (m - 1) * (2 * m.pow(2) + (m - 1) * k) * (k + 1).pow(2);
}

RationalFunction expr_Psi() {
  const auto m = M(), k = K();
  return 4 * (m + 1) * (2 * m - k) * k -
         (2 * m.pow(2) + (m - 1) * k) * (k + 1).pow(2);
}

RationalFunction expr_Psi_factored() {
  const auto m = M(), u = 1 - K();
  return u * ((m - 1) * u.pow(2) - (2 * m.pow(2) + 9 * m - 1) * u + 8 * m);
}

RationalFunction expr_beckner_rate() {
  const auto m = M(), q = Q();
  return (((m + 1) * q + 2 * m) / (m * (q + 1)))
      .assume("m != 0")
      .assume("q != -1");
}

const std::vector<std::pair<std::string, Builder>>& builders() {
  static const std::vector<std::pair<std::string, Builder>> table = {
      {"A", expr_A},
      {"B", expr_B},
      {"A1", expr_A1},
      {"B1", expr_B1},
      {"A2", expr_A2},
      {"B2", expr_B2},
      {"Theta", expr_Theta},
      {"c0", expr_c0},
      {"c1", expr_c1},
      {"c2", expr_c2},
      {"Q", expr_Q},
      {"F", expr_F},
      {"a_sobolev", expr_a_sobolev},
      {"b_sub", expr_b_sub},
      {"a_beckner", expr_a_beckner},
      {"B3", expr_B3},
      {"Upsilon", expr_Upsilon},
      {"E", expr_E},
      {"S", expr_S},
      {"Omega", expr_Omega},
      {"Psi", expr_Psi},
      {"boundary_p", expr_boundary_p},
      {"beckner_rate", expr_beckner_rate},
  };
  return table;
}

// ------------------------------------------------------------ identities

struct Equation {
  std::string label;
  RationalFunction lhs;
  RationalFunction rhs;
};

CheckReport exact_report(std::string id, std::string description,
                         std::vector<std::string> assumptions,
                         const std::vector<Equation>& equations) {
  CheckReport report;
  report.id = std::move(id);
  report.description = std::move(description);
  report.assumptions = std::move(assumptions);
  report.status = CheckStatus::Pass;
  for (const auto& eq : equations) {
    IdentityPart part{eq.label, eq.lhs.cross_residual(eq.rhs)};
    if (!part.residual.is_zero() && report.status == CheckStatus::Pass) {
      report.status = CheckStatus::Fail;
      report.residual = part.residual;
    }
    report.parts.push_back(std::move(part));
  }
  return report;
}

CheckReport identity_I1() {
  const auto b = expr_b_sub();
  const auto lhs = 1 - 2 / Q() * (A() - b / K());
  return exact_report("I1", "b = ka + (1-k)q/2 gives 1 - (2/q)(a - b/k) = 1/k",
                      {"q != 0", "k != 0"},
                      {{"1 - (2/q)(a - b/k) = 1/k", lhs, 1 / K()}});
}

CheckReport identity_I2() {
  const auto m = M(), q = Q();
  return exact_report(
      "I2", "Laplacian-squared coefficients from the Hessian estimate",
      {"m != 0"},
      {{"A1 = 2m A - 3m q", expr_A1(), 2 * m * expr_A() - 3 * m * q},
       {"B1 = 2m B + m q (q-1)", expr_B1(),
        2 * m * expr_B() + m * q * (q - 1)}});
}

CheckReport identity_I3() {
  const auto m = M(), k = K();
  const auto f = (m - (m - 1) * k) / (2 * m);
  const auto g = m + (m - 1) * k;
  return exact_report(
      "I3", "Hessian-squared coefficients from the Laplacian estimate",
      {"m != 0"},
      {{"A2 = f A1 + g A", expr_A2(), f * expr_A1() + g * expr_A()},
       {"B2 = f B1 + g B", expr_B2(), f * expr_B1() + g * expr_B()}});
}

CheckReport identity_I4() {
  const auto m = M(), k = K(), p = P(), r = R();
  const auto lhs = ((m - 1) * k + m) / (2 * m) +
                   A() * (m + 1) * k / (r * m * (p - 1));
  return exact_report(
      "I4", "the Sobolev choice of a kills the (Delta u)^2 coefficient",
      {"m != 0", "k != 0", "r != 0", "p != 1"},
      {{"coefficient(a = a_sobolev) = 0",
        lhs.substitute(Var::a, expr_a_sobolev()), 0}});
}

CheckReport identity_I5() {
  const auto m = M(), k = K();
  return exact_report(
      "I5", "F at a = a_sobolev is a multiple of Theta(r)",
      {"m != 0", "k != 0", "r != 0", "p != 1"},
      {{"F(a_sobolev) = (m+(m-1)k)/(8m(m+1)^2 k) Theta",
        expr_F().substitute(Var::a, expr_a_sobolev()),
        (m + (m - 1) * k) / (8 * m * (m + 1).pow(2) * k) * expr_Theta()}});
}

CheckReport identity_I6() {
  const auto r = R();
  const auto c0 = expr_c0(), c1 = expr_c1(), c2 = expr_c2();
  return exact_report(
      "I6", "Theta coefficients and the discriminant factorization",
      {"m != 1", "k != -1"},
      {{"Theta = c0 r^2 + c1 r + c2", expr_Theta(),
        c0 * r.pow(2) + c1 * r + c2},
       {"c1^2 - 4 c0 c2 = 16k(m+1)^2 Q", c1.pow(2) - 4 * c0 * c2,
        16 * K() * (M() + 1).pow(2) * expr_Q()},
       {"Q expanded = Q factored", expr_Q_expanded(), expr_Q()}});
}

CheckReport identity_I7() {
  return exact_report("I7", "A2 vanishes at the Beckner choice of a",
                      {"k != 0"},
                      {{"A2(a_beckner) = 0",
                        expr_A2().substitute(Var::a, expr_a_beckner()), 0}});
}

CheckReport identity_I8() {
  const auto q = Q(), s = S();
  const auto scale = (q + 2 * s).pow(2) / q.pow(2);
  const auto b2_sigma = expr_B2().substitute(Var::k, expr_k_sigma()) * scale;
  return exact_report(
      "I8", "sigma reparametrization of B2 with k = q/(q + 2 sigma)",
      {"q != 0", "q + 2*sigma != 0"},
      {{"a_beckner(k = q/(q+2 sigma)) = 3q/(4(m+1)) - m sigma/(2(m+1))",
        expr_a_beckner().substitute(Var::k, expr_k_sigma()), expr_a_sigma()},
       {"B3(a free) = B2 (q+2 sigma)^2/q^2", expr_B3_general(), b2_sigma},
       {"B3 four-term expansion = B2 (q+2 sigma)^2/q^2 at a(sigma)",
        expr_B3(), b2_sigma.substitute(Var::a, expr_a_sigma())}});
}

CheckReport identity_I9() {
  const auto q = Q();
  const auto D = expr_D();
  CheckReport report = exact_report(
      "I9", "Upsilon >= 0 iff E >= 0, via E = 8(m+1)^2 (q D - 2 B3)",
      {"q > 0", "sigma > 0"},
      {{"E = 8(m+1)^2 (q D - 2 B3)", expr_E(),
        8 * (M() + 1).pow(2) * (q * D - 2 * expr_B3())},
       {"Upsilon D = q D - 2 B3", expr_Upsilon() * D, q * D - 2 * expr_B3()}});
  report.detail =
      "D = (1 + 2 sigma/q)(2m - 1 + 2m sigma/q) > 0 for q, sigma > 0, m >= 1";
  return report;
}

CheckReport identity_I10() {
  const auto m = M(), p = P();
  const auto q_of_p = ((2 - p) / (p - 1)).assume("p != 1");
  return exact_report(
      "I10", "Beckner decay rate in terms of p", {"p != 1", "m != 0"},
      {{"((m+1)q + 2m)/(m(q+1)) = ((m-1)p + 2)/m at q = (2-p)/(p-1)",
        expr_beckner_rate().substitute(Var::q, q_of_p),
        ((m - 1) * p + 2) / m}});
}

CheckReport identity_I11() {
  const auto m = M(), k = K();
  const auto s_at_boundary = expr_S().substitute(Var::p, expr_boundary_p());
  return exact_report(
      "I11", "diameter gain S, Omega and Psi at p = p(k)",
      {"m != 1", "k != -1"},
      {{"S(p(k)) = Omega/((m-1)(k+1)^2)", s_at_boundary,
        expr_Omega() / ((m - 1) * (k + 1).pow(2))},
       {"Omega expanded = Omega", expr_Omega_expanded(), expr_Omega()},
       {"Omega = (m-1) Psi", expr_Omega(), (m - 1) * expr_Psi()},
       {"S(p(k)) = Psi/(k+1)^2", s_at_boundary, expr_Psi() / (k + 1).pow(2)},
       {"Psi factored", expr_Psi(), expr_Psi_factored()}});
}

CheckReport identity_I12() {
  constexpr double kRelTol = 1e-12;
  constexpr int kMMax = 100;
  constexpr int kGrid = 50;
  CheckReport report;
  report.id = "I12";
  report.description =
      "(m+(m-1)k)(p-2)/(2m) at p = p(k) equals rho * C_S (numeric grid)";
  report.assumptions = {"0 < k <= 1 admissible"};
  double worst = 0.0;
  std::string where;
  for (int m = 2; m <= kMMax; ++m) {
    const double lo = (m + 3.0 - 2.0 * std::sqrt(2.0 * (m + 1.0))) / (m - 1.0);
    for (int i = 1; i <= kGrid; ++i) {
      const double k = lo + (1.0 - lo) * i / kGrid;
      const double p = boundary_exponent(m, k);
      if (!(p > 2.0)) continue;
      const double family = (m + (m - 1.0) * k) * (p - 2.0) / (2.0 * m);
      const double closed = kahler_sobolev_constant(GeometryParams(m, 1.0), p);
      const double rel = std::abs(family - closed) / std::abs(closed);
      if (rel > worst) {
        worst = rel;
        where = "m=" + std::to_string(m) + " k=" + std::to_string(k);
      }
    }
  }
  report.min_value = kRelTol - worst;
  report.status = worst <= kRelTol ? CheckStatus::Pass : CheckStatus::Fail;
  std::ostringstream os;
  os.precision(3);
  os << "max relative difference " << worst << " at " << where
     << " over m in 2.." << kMMax << ", " << kGrid << " k-points";
  report.detail = os.str();
  return report;
}

CheckReport identity_I13() {
  constexpr long long kMMax = 1'000'000;
  const auto m = M();
  CheckReport report = exact_report(
      "I13",
      "(m-1)/(8m sqrt(2m-1)) >= sqrt(2m-1)/(24m) iff 3(m-1) >= 2m-1 iff m >= 2",
      {"m > 0", "s = sqrt(2m-1) > 0"},
      {{"24m s * (m-1)/(8m s) = 3(m-1)", 24 * m * (m - 1) / (8 * m),
        3 * (m - 1)},
       {"24m s * s/(24m) = 2m-1 with s^2 = 2m-1", 24 * m * (2 * m - 1) / (24 * m),
        2 * m - 1},
       {"3(m-1) - (2m-1) = m - 2", 3 * (m - 1) - (2 * m - 1), m - 2}});
  long long first_failure = 0;
  for (long long mi = 2; mi <= kMMax; ++mi) {
    if (3 * (mi - 1) < 2 * mi - 1) {
      first_failure = mi;
      break;
    }
  }
  report.min_value = 0.0;  // m - 2 at m = 2
  if (first_failure != 0) {
    report.status = CheckStatus::Fail;
    report.detail = "integer sweep fails at m=" + std::to_string(first_failure);
  } else {
    report.detail = "integer sweep 3(m-1) >= 2m-1 holds for m in 2..1000000";
  }
  return report;
}

}  // namespace

const std::vector<std::string>& expression_catalog() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, builder] : builders()) out.push_back(name);
    return out;
  }();
  return names;
}

RationalFunction build_named_expression(std::string_view name) {
  for (const auto& [entry, builder] : builders()) {
    if (entry == name) return builder();
  }
  throw CatalogError("unknown expression '" + std::string(name) + "'");
}

std::string_view to_string(CheckStatus status) noexcept {
  return status == CheckStatus::Pass ? "pass" : "fail";
}

const std::vector<std::string>& identity_catalog() {
  static const std::vector<std::string> ids = {
      "I1", "I2", "I3", "I4", "I5", "I6", "I7",
      "I8", "I9", "I10", "I11", "I12", "I13"};
  return ids;
}

CheckReport verify_identity(std::string_view id) {
  static const std::vector<std::pair<std::string_view, CheckReport (*)()>>
      table = {{"I1", identity_I1},   {"I2", identity_I2},
               {"I3", identity_I3},   {"I4", identity_I4},
               {"I5", identity_I5},   {"I6", identity_I6},
               {"I7", identity_I7},   {"I8", identity_I8},
               {"I9", identity_I9},   {"I10", identity_I10},
               {"I11", identity_I11}, {"I12", identity_I12},
               {"I13", identity_I13}};
  for (const auto& [key, fn] : table) {
    if (key == id) return fn();
  }
  throw CatalogError("unknown identity '" + std::string(id) + "'");
}

RationalPolynomial q_times_e() {
  const RationalFunction qe = Q() * expr_E();
  if (!qe.is_polynomial()) {
    throw DomainError("q * E is not a polynomial");
  }
  RationalPolynomial out = qe.numerator();
  out *= 1 / qe.denominator().constant_term();
  return out;
}

CheckReport check_e_nonneg(int m_max, double q_max, int grid_points) {
  if (m_max < 2) throw DomainError("m_max must be >= 2");
  if (!(q_max > 0.0) || !std::isfinite(q_max)) {
    throw DomainError("q_max must be positive");
  }
  if (grid_points < 2) throw DomainError("grid_points must be >= 2");

  const auto m = M(), q = Q();
  const RationalFunction on_curve =
      RationalFunction(q_times_e()).substitute(Var::sigma, 1 + q / (2 * m));

  CheckReport report;
  report.id = "E_nonneg";
  report.description = "q E >= 0 at sigma = 1 + q/(2m)";
  report.assumptions = {"q >= 0", "m >= 2"};

  const mpq_class q_top(q_max);
  std::optional<mpq_class> best;
  int best_m = 0;
  mpq_class best_q;
  for (int mi = 2; mi <= m_max; ++mi) {
    Point at;
    at.set(Var::m, mi);
    const RationalPolynomial num = on_curve.numerator().partial_evaluate(at);
    const RationalPolynomial den = on_curve.denominator().partial_evaluate(at);
    for (int i = 0; i < grid_points; ++i) {
      mpq_class qi = q_top * i / (grid_points - 1);
      qi.canonicalize();
      Point pt;
      pt.set(Var::q, qi);
      mpq_class value = num.evaluate(pt) / den.evaluate(pt);
      if (!best || value < *best) {
        best = value;
        best_m = mi;
        best_q = qi;
      }
    }
  }
  report.min_value = best->get_d();
  report.status = *best >= 0 ? CheckStatus::Pass : CheckStatus::Fail;
  std::ostringstream os;
  os << "minimum " << best->get_d() << " at m=" << best_m
     << " q=" << best_q.get_d() << " over m in 2.." << m_max << ", "
     << grid_points << " q-points in [0, " << q_max << "]";
  report.detail = os.str();
  return report;
}

}  // namespace kahler::algebra
