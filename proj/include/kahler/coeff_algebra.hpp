#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kahler/polynomial.hpp"

namespace kahler::algebra {

/// Names accepted by build_named_expression, in catalog order.
const std::vector<std::string>& expression_catalog();

/// Exact transcription of a named coefficient expression. Free variables
/// are those of the source formula (e.g. A1 is in m, k, q, a).
/// Throws CatalogError for unknown names.
///
///   A, B            Hessian-vs-Laplacian coefficients after choosing b
///   A1, B1          Laplacian-squared Bochner coefficients
///   A2, B2          Hessian-squared Bochner coefficients
///   Theta, c0..c2   quadratic in r whose real root closes the Sobolev estimate
///   Q               discriminant cofactor, factored form
///   F               |grad u|^4 coefficient before fixing a
///   a_sobolev       the a that kills the (Delta u)^2 term
///   b_sub           b = k a + (1-k) q / 2
///   a_beckner       the a that makes A2 vanish, in k
///   B3, Upsilon, E  sigma-parametrized Beckner coefficients
///   S, Omega, Psi   diameter-gain numerators, with p = p(k) for Omega, Psi
///   boundary_p      p(k) = 1 + (m+1)/(m-1) 4k/(k+1)^2
///   beckner_rate    ((m+1)q + 2m) / (m(q+1))
RationalFunction build_named_expression(std::string_view name);

enum class CheckStatus { Pass, Fail };

std::string_view to_string(CheckStatus status) noexcept;

/// One equation inside a catalog identity.
struct IdentityPart {
  std::string label;
  RationalPolynomial residual;
};

/// Outcome of an identity or sweep check. For exact identities, status is
/// Pass iff every part's residual is the zero polynomial; `residual` then
/// holds zero, otherwise the first nonzero part residual.
struct CheckReport {
  std::string id;
  std::string description;
  CheckStatus status = CheckStatus::Fail;
  RationalPolynomial residual;
  std::vector<std::string> assumptions;
  std::vector<IdentityPart> parts;
  /// Sweep and grid checks report the smallest slack observed.
  std::optional<double> min_value;
  std::string detail;

  bool passed() const noexcept { return status == CheckStatus::Pass; }
};

/// Identity ids I1..I13 in order.
const std::vector<std::string>& identity_catalog();

/// Expands the identity with denominators cleared and reports the residual.
/// I12 is a floating-point grid check at 1e-12 relative; I13 sweeps m over
/// 2..10^6 in integer arithmetic. Throws CatalogError for unknown ids.
CheckReport verify_identity(std::string_view id);

/// q * E evaluated at sigma = 1 + q/(2m), exact rational arithmetic, over
/// q in [0, q_max] (grid_points equispaced) and m in 2..m_max. Passes iff
/// the minimum is nonnegative.
CheckReport check_e_nonneg(int m_max, double q_max, int grid_points);

/// The polynomial q * E(m, q, sigma), free of the 1/q poles of E.
RationalPolynomial q_times_e();

}  // namespace kahler::algebra
