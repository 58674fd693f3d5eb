#pragma once

#include <optional>
#include <string_view>

namespace kahler {

/// Complex dimension m >= 2 and Ricci lower bound rho > 0 of a compact
/// Kähler manifold. Construction validates both.
class GeometryParams {
 public:
  GeometryParams(int m, double rho);

  int m() const noexcept { return m_; }
  double rho() const noexcept { return rho_; }

  /// Real dimension 2m.
  int real_dimension() const noexcept { return 2 * m_; }

  /// Upper end of the Sobolev range, 2m/(m-1).
  double critical_exponent() const noexcept;

 private:
  int m_;
  double rho_;
};

enum class ConstantFamily {
  RiemannianSobolev,
  KahlerSobolev,
  KahlerBeckner,
  LogSobolev,
  Poincare,
  PropositionC,
};

std::string_view to_string(ConstantFamily family) noexcept;

/// Interval of exponents with explicit endpoint inclusion.
struct ExponentRange {
  double lo;
  double hi;
  bool lo_closed;
  bool hi_closed;

  bool contains(double p) const noexcept;
};

struct InequalityConstant {
  ConstantFamily family;
  double p;
  std::optional<double> k;
  double value;
  ExponentRange valid_p_range;
};

/// Riemannian Sobolev constant (n-1)(p-2)/(n rho) on an n-manifold with
/// Ric >= rho, for 2 <= p <= 2n/(n-2).
double riemannian_sobolev_constant(int n, double p, double rho);

/// Kähler Sobolev constant C_S for 2 <= p <= 2m/(m-1). Agrees with the
/// Riemannian constant (n = 2m) at the critical exponent.
double kahler_sobolev_constant(const GeometryParams& g, double p);

/// Kähler Beckner constant C_B for 1 < p <= 2; equals 1/(2 rho) at p = 2.
double kahler_beckner_constant(const GeometryParams& g, double p);

/// Log-Sobolev constant 2m/((m+1) rho).
double log_sobolev_constant(const GeometryParams& g);

/// Exponent p(k) = 1 + (m+1)/(m-1) * 4k/(k+1)^2 at which the k-family
/// Sobolev inequality is sharpest.
double boundary_exponent(int m, double k);

/// p(k) - 2 evaluated without cancellation:
/// (4(m+1)k - (m-1)(k+1)^2) / ((m-1)(k+1)^2).
double boundary_exponent_excess(int m, double k);

/// Smaller root k of (p-1)(m-1)(k+1)^2 = 4(m+1)k, for 2 < p <= 2m/(m-1).
double optimal_k_for_p(int m, double p);

/// One-parameter Sobolev constant (m + (m-1)k)(p-2)/(2m rho), valid when
/// p <= p(k). Throws AdmissibilityError otherwise.
double proposition_c_constant(const GeometryParams& g, double p, double k);

/// Tagged record for any family. `k` is required for PropositionC and
/// rejected otherwise; `p` is ignored for LogSobolev (reported as 1) and
/// Poincare (reported as 2).
InequalityConstant evaluate_constant(ConstantFamily family,
                                     const GeometryParams& g, double p,
                                     std::optional<double> k = std::nullopt);

}  // namespace kahler
