#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "kahler/diameter.hpp"
#include "kahler/quadrature.hpp"

namespace kahler {

enum class IntegralBackend { Recurrence, Quadrature };

/// I_n(theta) = integral of sin^n r over [0, theta], 0 <= theta <= pi.
///
/// The recurrence backend runs n I_n = (n-1) I_{n-2} - sin^{n-1}(theta)
/// cos(theta) forward when cos(theta) <= 0 and backward (seeded far above n
/// and rescaled by sin^{n+1}) when cos(theta) > 0, where the forward
/// direction loses all accuracy. The quadrature backend is adaptive Simpson
/// at 1e-13 relative tolerance.
QuadratureEstimate sin_power_integral(
    int n, double theta, IntegralBackend backend = IntegralBackend::Recurrence);

/// 2^{2m} (m!)^2 / (2m+1)!, which equals I_{2m+1}(pi/2).
mpq_class wallis_factor(int m);

/// sqrt(2 pi)(n/e)^n sqrt(n) <= n! <= e (n/e)^n sqrt(n), all in logs.
struct StirlingCheck {
  int n;
  double log_lower;
  double log_factorial;
  double log_upper;

  bool holds() const noexcept {
    return log_lower <= log_factorial && log_factorial <= log_upper;
  }
};
StirlingCheck stirling_check(int n);

/// Numerator and denominator of the Rayleigh quotient on [0, d/2]:
///   N = integral of sin^2(pi r/d) sin^{2m-1} r,
///   D = integral of cos^2(pi r/d) sin^{2m-1} r.
struct RayleighParts {
  QuadratureEstimate numerator;
  QuadratureEstimate denominator;
};
RayleighParts rayleigh_parts(int m, double d);

/// N/D. Throws DegenerateDomainError when D < 1e-300.
QuadratureEstimate rayleigh_ratio(int m, double d);

/// (pi/d)^2 N/D - 2(2m-1). Nonnegative at every admissible diameter.
double prop_p_margin(int m, double d);

struct RayleighSolve {
  int m;
  double d_star;
  double margin;
  double bracket_lo;
  double bracket_hi;
  int iterations;
  /// Finite-difference slope of the margin across the final bracket.
  double slope;
};

/// Largest d in (0, pi) with prop_p_margin(m, d) >= 0: scans 2048 points
/// for the last sign change, then bisects to width tol (0 < tol <= 1e-8).
/// Returns the nonnegative end of the final bracket.
RayleighSolve solve_max_diameter_detailed(int m, double tol);

/// Same solve as a DiameterBound for Ric >= 2m - 1.
DiameterBound solve_max_diameter(int m, double tol);

/// pi (1 - 1/(200 sqrt(m) ln m)), for Ric >= 2m - 1.
DiameterBound closed_form_200(int m);

/// 1/(100 sqrt(m) ln m), the largest epsilon the contradiction argument
/// assumes.
double chain_epsilon_threshold(int m);

/// One recorded comparison `lhs relation rhs`; `pass` is its truth value.
struct ChainStep {
  std::string name;
  double lhs;
  std::string relation;
  double rhs;
  bool pass;
};

/// Step-by-step numeric replay of the contradiction argument with
/// d = pi/(1 + epsilon). No step is forced: each records its own truth.
struct ChainReport {
  int m;
  double epsilon;
  double d;
  bool in_hypothesis;
  std::vector<ChainStep> steps;
  /// 2(2m-1) > (3/2)(1+epsilon)^2 (2m+1).
  bool contradiction;

  /// True iff every step except the final comparison holds.
  bool steps_hold() const noexcept;
};

ChainReport replay_chain(int m, double epsilon);

}  // namespace kahler
