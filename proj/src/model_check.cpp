#include "kahler/model_check.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "kahler/constants.hpp"
#include "kahler/errors.hpp"

namespace kahler {

namespace {

constexpr int kMaxDegree = 8;
constexpr int kComplexDim = 2;
constexpr int kRandomDegree = 4;

struct FactorMoments {
  double mean;
  double square;
  double energy;
};

FactorMoments moments(const ModelSpace& space, const ZonalFunction& f) {
  return {space.integrate_1d([&](double x) { return f.value(x); }),
          space.integrate_1d([&](double x) {
            const double v = f.value(x);
            return v * v;
          }),
          space.energy_1d(f)};
}

double abs_power_integral(const ModelSpace& space, const ProductFunction& F,
                          double q) {
  const double a =
      space.integrate_1d([&](double x) { return std::pow(std::abs(F.f.value(x)), q); });
  const double b =
      space.integrate_1d([&](double x) { return std::pow(std::abs(F.g.value(x)), q); });
  return a * b;
}

double energy_and_square(const ModelSpace& space, const ProductFunction& F,
                         double* square, double* mean) {
  const FactorMoments mf = moments(space, F.f);
  const FactorMoments mg = moments(space, F.g);
  if (square) *square = mf.square * mg.square;
  if (mean) *mean = mf.mean * mg.mean;
  return mf.energy * mg.square + mf.square * mg.energy;
}

// Uniform in [0, 1) from the top 53 bits, independent of the library's
// distribution implementation.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool constant_sign(const ModelSpace& space, const ZonalFunction& f) {
  bool pos = true;
  bool neg = true;
  space.integrate_1d([&](double x) {
    const double v = f.value(x);
    pos = pos && v > 0.0;
    neg = neg && v < 0.0;
    return 0.0;
  });
  return pos || neg;
}

}  // namespace

ZonalFunction::ZonalFunction(Form form, std::vector<double> coefficients)
    : form_(form), coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  if (static_cast<int>(coeffs_.size()) > kMaxDegree + 1) {
    throw DomainError("zonal function degree must be at most 8");
  }
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw DomainError("coefficients must be finite");
  }
}

ZonalFunction ZonalFunction::constant(double c) {
  return ZonalFunction(Form::Polynomial, {c});
}

ZonalFunction ZonalFunction::polynomial(std::vector<double> coefficients) {
  return ZonalFunction(Form::Polynomial, std::move(coefficients));
}

ZonalFunction ZonalFunction::exp_polynomial(std::vector<double> coefficients) {
  return ZonalFunction(Form::ExpPolynomial, std::move(coefficients));
}

double ZonalFunction::poly(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double ZonalFunction::poly_derivative(double x) const {
  double acc = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 1;) {
    acc = acc * x + static_cast<double>(j) * coeffs_[j];
  }
  return acc;
}

double ZonalFunction::value(double x) const {
  return form_ == Form::Polynomial ? poly(x) : std::exp(poly(x));
}

double ZonalFunction::derivative(double x) const {
  if (form_ == Form::Polynomial) return poly_derivative(x);
  return std::exp(poly(x)) * poly_derivative(x);
}

ModelSpace::ModelSpace(ManifoldSpec spec) : spec_(spec) {
  if (!std::isfinite(spec_.rho) || !(spec_.rho > 0.0)) {
    throw DomainError("rho must be positive");
  }
  if (spec_.order < 32) throw DomainError("quadrature order must be >= 32");
  rule_ = GaussLegendreRule::make(spec_.order);
}

double ModelSpace::energy_1d(const ZonalFunction& f) const {
  return spec_.rho * integrate_1d([&](double x) {
           const double d = f.derivative(x);
           return (1.0 - x * x) * d * d;
         });
}

double integrate_product(const ModelSpace& space, const ProductFunction& F) {
  return space.integrate_1d([&](double x) { return F.f.value(x); }) *
         space.integrate_1d([&](double x) { return F.g.value(x); });
}

double dirichlet_energy(const ModelSpace& space, const ProductFunction& F) {
  return energy_and_square(space, F, nullptr, nullptr);
}

double check_poincare(const ModelSpace& space, const ProductFunction& F) {
  double square = 0.0;
  double mean = 0.0;
  const double energy = energy_and_square(space, F, &square, &mean);
  return energy / (2.0 * space.rho()) - (square - mean * mean);
}

double check_beckner(const ModelSpace& space, const ProductFunction& F,
                     double p) {
  if (!std::isfinite(p) || !(p > 1.0) || p > 2.0) {
    throw DomainError("p must lie in (1, 2]");
  }
  if (!constant_sign(space, F.f) || !constant_sign(space, F.g)) {
    throw DomainError("Beckner check needs a function of constant sign");
  }
  double square = 0.0;
  const double energy = energy_and_square(space, F, &square, nullptr);
  const double c = kahler_beckner_constant(GeometryParams(kComplexDim, space.rho()), p);
  const double lower = std::pow(abs_power_integral(space, F, 2.0 / p), p);
  return c * energy - (square - lower);
}

double check_sobolev(const ModelSpace& space, const ProductFunction& F,
                     double p) {
  if (!std::isfinite(p) || !(p > 2.0) || p > 4.0) {
    throw DomainError("p must lie in (2, 4]");
  }
  double square = 0.0;
  const double energy = energy_and_square(space, F, &square, nullptr);
  const double c = kahler_sobolev_constant(GeometryParams(kComplexDim, space.rho()), p);
  const double upper = std::pow(abs_power_integral(space, F, p), 2.0 / p);
  return c * energy - (upper - square);
}

double rayleigh_quotient(const ModelSpace& space, const ProductFunction& F) {
  double square = 0.0;
  double mean = 0.0;
  const double energy = energy_and_square(space, F, &square, &mean);
  const double variance = square - mean * mean;
  // Rounding leaves a residue of order eps * int F^2 for constants.
  if (!(variance > 1e-14 * square)) throw DomainError("function has zero variance");
  return energy / variance;
}

Lambda1Report check_lambda1(const ModelSpace& space) {
  const ZonalFunction one = ZonalFunction::constant(1.0);
  const ZonalFunction x = ZonalFunction::polynomial({0.0, 1.0});
  const double first = rayleigh_quotient(space, {x, one});
  const double product = rayleigh_quotient(space, {x, x});
  const double bound = 2.0 * (2.0 * kComplexDim - 1.0);
  const double rho = space.rho();
  const bool matches = std::abs(first - 2.0 * rho) <= 1e-8 &&
                       std::abs(product - 4.0 * rho) <= 1e-8;
  return {rho, first, product, bound, matches};
}

ProductFunction random_test_function(std::uint64_t seed,
                                     std::uint32_t suite_tag,
                                     std::uint32_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), suite_tag, index};
  std::mt19937_64 rng(seq);
  std::vector<double> cf(kRandomDegree + 1);
  std::vector<double> cg(kRandomDegree + 1);
  for (double& c : cf) c = 2.0 * unit_uniform(rng) - 1.0;
  for (double& c : cg) c = 2.0 * unit_uniform(rng) - 1.0;
  return {ZonalFunction::exp_polynomial(std::move(cf)),
          ZonalFunction::exp_polynomial(std::move(cg))};
}

std::string to_string(ModelSuite suite) {
  return suite == ModelSuite::Beckner ? "beckner" : "sobolev";
}

SuiteResult run_model_suite(ModelSuite suite, const SuiteOptions& options) {
  if (options.functions < 0) throw DomainError("function count must be >= 0");
  const ModelSpace space(options.spec);
  const GeometryParams geometry(kComplexDim, space.rho());
  SuiteResult result;
  result.suite = suite;
  result.p_grid = suite == ModelSuite::Beckner
                      ? std::vector<double>{1.1, 1.25, 1.5, 1.75, 2.0}
                      : std::vector<double>{2.5, 3.0, 3.5, 4.0};
  const std::uint32_t tag = suite == ModelSuite::Beckner ? 1u : 2u;
  bool first = true;
  for (int i = 0; i < options.functions; ++i) {
    const ProductFunction F =
        random_test_function(options.seed, tag, static_cast<std::uint32_t>(i));
    const double energy = dirichlet_energy(space, F);
    for (double p : result.p_grid) {
      double margin = 0.0;
      double constant = 0.0;
      if (suite == ModelSuite::Beckner) {
        margin = check_beckner(space, F, p);
        constant = kahler_beckner_constant(geometry, p);
      } else {
        margin = check_sobolev(space, F, p);
        constant = kahler_sobolev_constant(geometry, p);
      }
      ++result.evaluations;
      if (first || margin < result.min_margin) result.min_margin = margin;
      first = false;
      if (margin < -1e-9) ++result.below_tolerance;
      if (margin < -1e-6) ++result.violations;
      const double scale = constant * energy;
      if (scale > 1e-300) {
        result.max_ratio = std::max(result.max_ratio, (scale - margin) / scale);
      }
    }
    ++result.checks;
  }
  return result;
}

}  // namespace kahler
