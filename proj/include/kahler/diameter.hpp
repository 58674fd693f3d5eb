#pragma once

#include <optional>
#include <string_view>

#include "kahler/coeff_algebra.hpp"
#include "kahler/constants.hpp"

namespace kahler {

enum class DiameterMethod {
  BonnetMyers,
  FamilyAtK,
  FamilyOptimized,
  ClosedForm24m,
  ClosedForm200,
  RayleighSolve,
};

std::string_view to_string(DiameterMethod method) noexcept;

struct DiameterParams {
  std::optional<double> k;
  std::optional<double> p;
  std::optional<double> d_star;
};

struct DiameterBound {
  DiameterMethod method;
  double value;
  DiameterParams params;
  GeometryParams geometry;
};

/// pi * sqrt((2m - 1)/rho).
double bonnet_myers_bound(const GeometryParams& g);

/// Diameter bound pi * sqrt(2pA)/(p - 2) implied by a Sobolev inequality
/// with exponent p > 2 and constant A.
double bakry_ledoux_bound(double p, double A);

/// Open interval of k with p(k) > 2, i.e. 4(m+1)k > (m-1)(k+1)^2.
struct KInterval {
  double lo;
  double hi;
};
KInterval admissible_k_interval(int m);

/// k = 1 - 1/(2m), the fixed choice behind the 1/(24m) gain.
double fixed_family_k(int m);

/// (pi/sqrt(rho)) * sqrt(p(m + (m-1)k) / (m(p - 2))) with p = p(k).
/// Throws AdmissibilityError outside the open admissible interval.
DiameterBound family_bound(const GeometryParams& g, double k);

/// (pi/sqrt(rho)) * sqrt(2m - 1) * (1 - 1/(24m)).
DiameterBound closed_form_24m(const GeometryParams& g);

/// Golden-section minimization of family_bound over k, after a 64-point
/// scan of the admissible interval shrunk by 1e-9 at both ends. `tol` is
/// the absolute tolerance in k and must lie in (0, 1e-6].
DiameterBound optimize_family(const GeometryParams& g, double tol);

/// Exact-rational record of the five inequality steps at k = 1 - 1/(2m).
struct Chain24mRow {
  int m;
  bool excess_positive;       // p - 2 > 0, and equals its closed form
  bool psi_at_least_two;      // Psi >= 2
  bool excess_scaled_bound;   // m (p-2)(k+1)^2 <= 8m/(m-1)
  bool numerator_bound;       // p (m + (m-1)k) <= 2m(2m-1)/(m-1)
  bool gain_bound;            // sqrt(2m-1) - sqrt(R) >= sqrt(2m-1)/(24m)
  double psi;
  /// (2m-1)(1 - 1/(24m))^2 - R, where R is the family radicand.
  double gain_slack;

  bool all() const noexcept {
    return excess_positive && psi_at_least_two && excess_scaled_bound &&
           numerator_bound && gain_bound;
  }
};

Chain24mRow chain_24m_row(int m);

/// Sweeps chain_24m_row over m in 2..m_max; passes iff every row holds.
algebra::CheckReport chain_24m_check(int m_max);

}  // namespace kahler
