#include <doctest.h>

#include <cmath>

#include "kahler/errors.hpp"
#include "kahler/model_check.hpp"
#include "support.hpp"

using namespace kahler;
using kahler::test::rel_diff;

namespace {

const ZonalFunction kOne = ZonalFunction::constant(1.0);
const ZonalFunction kCos = ZonalFunction::polynomial({0.0, 1.0});

ProductFunction first_factor(const ZonalFunction& f) { return {f, kOne}; }

}  // namespace

TEST_CASE("zonal functions") {
  const ZonalFunction p = ZonalFunction::polynomial({1.0, 2.0, 3.0});
  CHECK(p.value(2.0) == 17.0);
  CHECK(p.derivative(2.0) == 14.0);
  const ZonalFunction e = ZonalFunction::exp_polynomial({0.0, 0.3});
  CHECK(e.value(0.5) == doctest::Approx(std::exp(0.15)).epsilon(1e-15));
  CHECK(e.derivative(0.5) == doctest::Approx(0.3 * std::exp(0.15)).epsilon(1e-15));
  CHECK_THROWS_AS(ZonalFunction::polynomial(std::vector<double>(10, 1.0)), DomainError);
  CHECK_THROWS_AS(ZonalFunction::polynomial({std::nan("")}), DomainError);
  CHECK_THROWS_AS(ModelSpace(ManifoldSpec{0.0, 64}), DomainError);
  CHECK_THROWS_AS(ModelSpace(ManifoldSpec{1.0, 16}), DomainError);
}

TEST_CASE("normalized integrals") {
  const ModelSpace space(ManifoldSpec{});
  CHECK(integrate_product(space, {kOne, kOne}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(integrate_product(space, first_factor(kCos))) <= 1e-15);
  CHECK(integrate_product(space, first_factor(ZonalFunction::polynomial({0.0, 0.0, 1.0}))) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("dirichlet energy") {
  const ModelSpace unit(ManifoldSpec{1.0, 64});
  CHECK(dirichlet_energy(unit, first_factor(kCos)) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(dirichlet_energy(unit, {ZonalFunction::constant(2.5), kOne}) == 0.0);
  CHECK(rayleigh_quotient(unit, first_factor(kCos)) == doctest::Approx(2.0).epsilon(1e-13));
  const ModelSpace scaled(ManifoldSpec{4.5, 64});
  const ProductFunction F{ZonalFunction::exp_polynomial({0.1, -0.4, 0.2}),
                          ZonalFunction::polynomial({1.0, 0.0, 0.5})};
  CHECK(rel_diff(dirichlet_energy(scaled, F), 4.5 * dirichlet_energy(unit, F)) <= 1e-14);
  CHECK_THROWS_AS(rayleigh_quotient(unit, {kOne, kOne}), DomainError);
}

TEST_CASE("poincare inequality") {
  const ModelSpace space(ManifoldSpec{});
  CHECK(std::abs(check_poincare(space, first_factor(kCos))) <= 1e-9);
  CHECK(std::abs(check_poincare(space, {kOne, kOne})) <= 1e-15);
  CHECK(check_poincare(space, {kCos, kCos}) > 1e-4);
  const ModelSpace curved(ManifoldSpec{3.0, 64});
  CHECK(std::abs(check_poincare(curved, first_factor(kCos))) <= 1e-9);
}

TEST_CASE("beckner inequality") {
  const ModelSpace space(ManifoldSpec{});
  CHECK(std::abs(check_beckner(space, {ZonalFunction::constant(2.0), kOne}, 1.5)) <= 1e-14);
  const ProductFunction F = first_factor(ZonalFunction::exp_polynomial({0.0, 0.3}));
  const double margin = check_beckner(space, F, 1.5);
  CHECK(margin > 0.0);
  CHECK(std::abs(margin - 0.003192333519742156) <= 1e-12);
  CHECK(std::abs(check_beckner(space, F, 2.0) - check_poincare(space, F)) <= 1e-12);
  CHECK_THROWS_AS(check_beckner(space, first_factor(kCos), 1.5), DomainError);
  CHECK_THROWS_AS(check_beckner(space, F, 1.0), DomainError);
  CHECK_THROWS_AS(check_beckner(space, F, 2.5), DomainError);
}

TEST_CASE("sobolev inequality") {
  const ModelSpace space(ManifoldSpec{});
  CHECK(std::abs(check_sobolev(space, {kOne, kOne}, 3.0)) <= 1e-14);
  const ProductFunction F = first_factor(ZonalFunction::polynomial({1.0, 0.2}));
  CHECK(std::abs(check_sobolev(space, F, 3.0) - 0.001961017066950481) <= 1e-12);
  CHECK(std::abs(check_sobolev(space, F, 4.0) - 0.013948900122983583) <= 1e-12);
  CHECK(check_sobolev(space, F, 4.0) >= -1e-9);
  CHECK_THROWS_AS(check_sobolev(space, F, 2.0), DomainError);
  CHECK_THROWS_AS(check_sobolev(space, F, 4.5), DomainError);
}

TEST_CASE("first eigenvalue") {
  const Lambda1Report three = check_lambda1(ModelSpace(ManifoldSpec{3.0, 64}));
  CHECK(std::abs(three.first_quotient - 6.0) <= 1e-8);
  CHECK(std::abs(three.product_quotient - 12.0) <= 1e-8);
  CHECK(three.eigenvalue_bound == 6.0);
  CHECK(three.matches);
  const Lambda1Report one = check_lambda1(ModelSpace(ManifoldSpec{1.0, 64}));
  CHECK(std::abs(one.first_quotient - 2.0) <= 1e-8);
}

TEST_CASE("random test functions are reproducible and positive") {
  const ProductFunction a = random_test_function(7, 1, 3);
  const ProductFunction b = random_test_function(7, 1, 3);
  CHECK(a.f.coefficients() == b.f.coefficients());
  CHECK(a.g.coefficients() == b.g.coefficients());
  CHECK(a.f.coefficients() != random_test_function(7, 2, 3).f.coefficients());
  CHECK(a.f.coefficients() != random_test_function(8, 1, 3).f.coefficients());
  for (std::uint32_t i = 0; i < 50; ++i) {
    const ProductFunction F = random_test_function(11, 1, i);
    CHECK(F.f.form() == ZonalFunction::Form::ExpPolynomial);
    CHECK(F.f.coefficients().size() == 5);
    for (double c : F.f.coefficients()) {
      CHECK(c >= -1.0);
      CHECK(c <= 1.0);
    }
  }
}

TEST_CASE("quadrature order doubling leaves margins unchanged") {
  const ModelSpace coarse(ManifoldSpec{1.0, 64});
  const ModelSpace fine(ManifoldSpec{1.0, 128});
  for (std::uint32_t i = 0; i < 40; ++i) {
    const ProductFunction F = random_test_function(3, 1, i);
    for (double p : {1.1, 1.25, 1.5, 1.75, 2.0}) {
      CHECK(std::abs(check_beckner(coarse, F, p) - check_beckner(fine, F, p)) < 1e-10);
    }
    for (double p : {2.5, 3.0, 3.5, 4.0}) {
      CHECK(std::abs(check_sobolev(coarse, F, p) - check_sobolev(fine, F, p)) < 1e-10);
    }
    CHECK(std::abs(check_poincare(coarse, F) - check_poincare(fine, F)) < 1e-10);
  }
}

TEST_CASE("seeded suites find no violations") {
  for (std::uint64_t seed : {0ULL, 42ULL, 7ULL}) {
    SuiteOptions options;
    options.seed = seed;
    const SuiteResult beckner = run_model_suite(ModelSuite::Beckner, options);
    const SuiteResult sobolev = run_model_suite(ModelSuite::Sobolev, options);
    CHECK(beckner.checks == 200);
    CHECK(sobolev.checks == 200);
    CHECK(beckner.evaluations == 1000);
    CHECK(sobolev.evaluations == 800);
    CHECK(beckner.violations == 0);
    CHECK(sobolev.violations == 0);
    CHECK(beckner.below_tolerance == 0);
    CHECK(sobolev.below_tolerance == 0);
    CHECK(beckner.max_ratio <= 1.0);
    CHECK(sobolev.max_ratio <= 1.0);
  }
  CHECK(to_string(ModelSuite::Beckner) == "beckner");
}
