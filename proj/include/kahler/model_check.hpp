#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kahler/quadrature.hpp"

namespace kahler {

/// A function of x = cos(theta) on a round 2-sphere, either a polynomial
/// in x or exp of one. Degree is at most 8.
class ZonalFunction {
 public:
  enum class Form { Polynomial, ExpPolynomial };

  ZonalFunction(Form form, std::vector<double> coefficients);

  static ZonalFunction constant(double c);
  static ZonalFunction polynomial(std::vector<double> coefficients);
  static ZonalFunction exp_polynomial(std::vector<double> coefficients);

  Form form() const noexcept { return form_; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }

  double value(double x) const;
  /// d/dx of the function; the theta-derivative is -sin(theta) times this.
  double derivative(double x) const;

 private:
  double poly(double x) const;
  double poly_derivative(double x) const;

  Form form_;
  std::vector<double> coeffs_;
};

/// F(theta1, theta2) = f(theta1) g(theta2).
struct ProductFunction {
  ZonalFunction f;
  ZonalFunction g;
};

struct ManifoldSpec {
  /// Gaussian curvature of each sphere factor, so Ric >= rho.
  double rho = 1.0;
  /// Gauss–Legendre nodes per factor.
  int order = 64;
};

/// CP^1 x CP^1 as a product of two round spheres of curvature rho with the
/// probability measure (1/2) sin(theta) d(theta) on each factor.
class ModelSpace {
 public:
  explicit ModelSpace(ManifoldSpec spec);

  const ManifoldSpec& spec() const noexcept { return spec_; }
  double rho() const noexcept { return spec_.rho; }

  /// Normalized integral of h(cos theta) over one factor.
  template <class H>
  double integrate_1d(const H& h) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule_.size(); ++i) {
      sum += rule_.weights[i] * h(rule_.nodes[i]);
    }
    return 0.5 * sum;
  }

  /// rho * integral of (1 - x^2) f'(x)^2, i.e. the factor Dirichlet energy.
  double energy_1d(const ZonalFunction& f) const;

 private:
  ManifoldSpec spec_;
  GaussLegendreRule rule_;
};

double integrate_product(const ModelSpace& space, const ProductFunction& F);

/// rho [int f'^2 int g^2 + int f^2 int g'^2], theta-derivatives.
double dirichlet_energy(const ModelSpace& space, const ProductFunction& F);

/// (1/(2 rho)) energy - variance.
double check_poincare(const ModelSpace& space, const ProductFunction& F);

/// C_B(2, rho, p) energy - [int F^2 - (int F^{2/p})^p] for 1 < p <= 2.
/// Throws DomainError unless F has constant nonzero sign.
double check_beckner(const ModelSpace& space, const ProductFunction& F,
                     double p);

/// C_S(2, rho, p) energy - [(int |F|^p)^{2/p} - int F^2] for 2 < p <= 4.
double check_sobolev(const ModelSpace& space, const ProductFunction& F,
                     double p);

/// Rayleigh quotient energy / variance; throws DomainError for constants.
double rayleigh_quotient(const ModelSpace& space, const ProductFunction& F);

struct Lambda1Report {
  double rho;
  /// Quotient of cos(theta1); equals 2 rho.
  double first_quotient;
  /// Quotient of cos(theta1) cos(theta2); equals 4 rho.
  double product_quotient;
  /// 2(2m - 1) = 6 for m = 2.
  double eigenvalue_bound;
  bool matches;
};

/// At rho = 3 the first quotient attains the bound 2(2m-1) exactly.
Lambda1Report check_lambda1(const ModelSpace& space);

/// Random test function exp(sum_{j<=4} c_j x^j) per factor, c_j uniform in
/// [-1, 1]. Each (seed, suite_tag, index) pair owns its own generator,
/// seeded by seed_seq{seed low word, seed high word, suite_tag, index}.
ProductFunction random_test_function(std::uint64_t seed,
                                     std::uint32_t suite_tag,
                                     std::uint32_t index);

enum class ModelSuite { Beckner, Sobolev };

struct SuiteOptions {
  std::uint64_t seed = 0;
  int functions = 200;
  ManifoldSpec spec{};
};

struct SuiteResult {
  ModelSuite suite;
  std::vector<double> p_grid;
  /// One check per function, covering its whole p-grid.
  int checks = 0;
  int evaluations = 0;
  /// Margins below -1e-9.
  int below_tolerance = 0;
  /// Margins below -1e-6, counted as genuine violations.
  int violations = 0;
  double min_margin = 0.0;
  /// Largest deficit / (constant * energy) seen; at most 1 when the
  /// inequality holds.
  double max_ratio = 0.0;
};

/// Beckner grid {1.1, 1.25, 1.5, 1.75, 2}, Sobolev grid {2.5, 3, 3.5, 4}.
SuiteResult run_model_suite(ModelSuite suite, const SuiteOptions& options);

std::string to_string(ModelSuite suite);

}  // namespace kahler
