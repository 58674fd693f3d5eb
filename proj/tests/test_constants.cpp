#include <doctest.h>

#include <cmath>

#include "kahler/constants.hpp"
#include "kahler/errors.hpp"
#include "support.hpp"

using namespace kahler;
using kahler::test::rel_diff;

TEST_CASE("geometry params validate m and rho") {
  CHECK_THROWS_AS(GeometryParams(1, 1.0), DomainError);
  CHECK_THROWS_AS(GeometryParams(2, 0.0), DomainError);
  CHECK_THROWS_AS(GeometryParams(2, -1.0), DomainError);
  CHECK_THROWS_AS(GeometryParams(2, std::nan("")), DomainError);
  const GeometryParams g(3, 2.0);
  CHECK(g.real_dimension() == 6);
  CHECK(g.critical_exponent() == doctest::Approx(3.0));
}

TEST_CASE("riemannian sobolev constant examples") {
  CHECK(riemannian_sobolev_constant(4, 3.0, 1.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(riemannian_sobolev_constant(4, 2.0, 1.0) == 0.0);
  CHECK(riemannian_sobolev_constant(3, 6.0, 2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(riemannian_sobolev_constant(4, 4.5, 1.0), DomainError);
  CHECK_THROWS_AS(riemannian_sobolev_constant(4, 1.5, 1.0), DomainError);
}

TEST_CASE("kahler sobolev constant examples") {
  const GeometryParams g(2, 1.0);
  CHECK(kahler_sobolev_constant(g, 3.0) ==
        doctest::Approx((8.0 - 2.0 * std::sqrt(3.0)) / 8.0).epsilon(1e-14));
  CHECK(kahler_sobolev_constant(g, 4.0) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(kahler_sobolev_constant(g, 4.0) ==
        doctest::Approx(riemannian_sobolev_constant(4, 4.0, 1.0)).epsilon(1e-14));
  CHECK(kahler_sobolev_constant(GeometryParams(3, 1.0), 2.0) == 0.0);
  CHECK_THROWS_AS(kahler_sobolev_constant(g, 4.5), DomainError);
  CHECK_THROWS_AS(kahler_sobolev_constant(g, 1.9), DomainError);
}

TEST_CASE("kahler sobolev is strictly below the riemannian constant inside the range") {
  for (int m = 2; m <= 100; ++m) {
    const GeometryParams g(m, 1.0);
    const double crit = g.critical_exponent();
    for (int i = 1; i <= 50; ++i) {
      const double p = 2.0 + (crit - 2.0) * i / 51.0;
      CHECK(kahler_sobolev_constant(g, p) < riemannian_sobolev_constant(2 * m, p, 1.0));
    }
    CHECK(rel_diff(kahler_sobolev_constant(g, crit),
                   riemannian_sobolev_constant(2 * m, crit, 1.0)) <= 1e-12);
  }
}

TEST_CASE("beckner, poincare and log-sobolev constants") {
  CHECK(kahler_beckner_constant(GeometryParams(2, 1.0), 2.0) == 0.5);
  CHECK(kahler_beckner_constant(GeometryParams(3, 5.0), 2.0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(kahler_beckner_constant(GeometryParams(2, 1.0), 1.5) ==
        doctest::Approx(8.0 / 21.0).epsilon(1e-15));
  CHECK(log_sobolev_constant(GeometryParams(2, 1.0)) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(log_sobolev_constant(GeometryParams(1, 1.0)), DomainError);
  CHECK_THROWS_AS(kahler_beckner_constant(GeometryParams(2, 1.0), 1.0), DomainError);
  CHECK_THROWS_AS(kahler_beckner_constant(GeometryParams(2, 1.0), 2.5), DomainError);

  // C_B/(p-1) tends to the log-Sobolev constant as p -> 1.
  for (int m = 2; m <= 10; ++m) {
    const GeometryParams g(m, 1.0);
    const double p = 1.0 + 1e-9;
    CHECK(kahler_beckner_constant(g, p) / (p - 1.0) ==
          doctest::Approx(log_sobolev_constant(g)).epsilon(1e-8));
  }
}

TEST_CASE("optimal k picks the smaller root") {
  CHECK(optimal_k_for_p(2, 3.0) == doctest::Approx(2.0 - std::sqrt(3.0)).epsilon(1e-14));
  CHECK(optimal_k_for_p(2, 4.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(optimal_k_for_p(2, 5.0), DomainError);
  CHECK_THROWS_AS(optimal_k_for_p(2, 2.0), DomainError);
  for (int m = 2; m <= 30; ++m) {
    const double crit = 2.0 * m / (m - 1.0);
    for (int i = 1; i <= 10; ++i) {
      const double p = 2.0 + (crit - 2.0) * i / 10.0;
      const double k = optimal_k_for_p(m, p);
      CHECK(k <= 1.0 + 1e-12);
      CHECK(rel_diff(boundary_exponent(m, k), p) <= 1e-12);
    }
  }
}

TEST_CASE("one-parameter constant") {
  const GeometryParams g(2, 1.0);
  CHECK(proposition_c_constant(g, 3.0, 2.0 - std::sqrt(3.0)) ==
        doctest::Approx((4.0 - std::sqrt(3.0)) / 4.0).epsilon(1e-14));
  CHECK(proposition_c_constant(g, 3.0, 1.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(proposition_c_constant(g, 3.0, 0.05), AdmissibilityError);

  for (int m = 2; m <= 100; ++m) {
    const GeometryParams gm(m, 1.0);
    const double crit = gm.critical_exponent();
    for (int i = 1; i <= 50; ++i) {
      const double p = 2.0 + (crit - 2.0) * i / 50.0;
      const double k = optimal_k_for_p(m, p);
      CHECK(rel_diff(proposition_c_constant(gm, p, k), kahler_sobolev_constant(gm, p)) <=
            1e-12);
    }
  }
}

TEST_CASE("constants scale as 1/rho") {
  for (int m = 2; m <= 20; ++m) {
    for (double rho : {0.5, 1.0, 3.0, 17.0}) {
      const GeometryParams g(m, rho);
      const GeometryParams unit(m, 1.0);
      const double p = 2.0 + 0.5 * (g.critical_exponent() - 2.0);
      CHECK(rel_diff(kahler_sobolev_constant(g, p) * rho, kahler_sobolev_constant(unit, p)) <=
            1e-15);
      CHECK(rel_diff(kahler_beckner_constant(g, 1.5) * rho, kahler_beckner_constant(unit, 1.5)) <=
            1e-15);
      CHECK(rel_diff(log_sobolev_constant(g) * rho, log_sobolev_constant(unit)) <= 1e-15);
    }
  }
}

TEST_CASE("evaluate_constant tags families and ranges") {
  const GeometryParams g(2, 1.0);
  const InequalityConstant cs = evaluate_constant(ConstantFamily::KahlerSobolev, g, 3.0);
  CHECK(cs.value == doctest::Approx(0.566987298108).epsilon(1e-12));
  CHECK(cs.valid_p_range.contains(4.0));
  CHECK_FALSE(cs.valid_p_range.contains(4.1));
  const InequalityConstant pc =
      evaluate_constant(ConstantFamily::PropositionC, g, 3.0, 1.0);
  CHECK(pc.k.has_value());
  CHECK_FALSE(pc.valid_p_range.lo_closed);
  CHECK_THROWS_AS(evaluate_constant(ConstantFamily::PropositionC, g, 3.0), DomainError);
  CHECK_THROWS_AS(evaluate_constant(ConstantFamily::Poincare, g, 2.0, 1.0), DomainError);
  CHECK(evaluate_constant(ConstantFamily::Poincare, g, 7.0).value == 0.5);
  CHECK(to_string(ConstantFamily::LogSobolev) == "log_sobolev");
}
