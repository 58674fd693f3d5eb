#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kahler/diameter.hpp"
#include "kahler/errors.hpp"
#include "support.hpp"

using namespace kahler;
using kahler::test::rel_diff;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("bonnet-myers examples") {
  CHECK(bonnet_myers_bound(GeometryParams(2, 3.0)) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(bonnet_myers_bound(GeometryParams(5, 9.0)) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(bonnet_myers_bound(GeometryParams(2, 1.0)) ==
        doctest::Approx(kPi * std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("bakry-ledoux examples") {
  CHECK(bakry_ledoux_bound(4.0, 1.5) == doctest::Approx(kPi * std::sqrt(3.0)).epsilon(1e-15));
  const double cs = (8.0 - 2.0 * std::sqrt(3.0)) / 8.0;
  CHECK(bakry_ledoux_bound(3.0, cs) == doctest::Approx(kPi * std::sqrt(6.0 * cs)).epsilon(1e-15));
  CHECK(bakry_ledoux_bound(3.0, cs) / kPi == doctest::Approx(1.84444).epsilon(1e-5));
  CHECK_THROWS_AS(bakry_ledoux_bound(2.0, 1.0), DomainError);
}

TEST_CASE("admissible interval and fixed k") {
  const KInterval iv = admissible_k_interval(2);
  CHECK(iv.lo == doctest::Approx(5.0 - 2.0 * std::sqrt(6.0)).epsilon(1e-14));
  CHECK(iv.hi == doctest::Approx(5.0 + 2.0 * std::sqrt(6.0)).epsilon(1e-14));
  CHECK(fixed_family_k(2) == 0.75);
  CHECK(fixed_family_k(10) == doctest::Approx(0.95));
}

TEST_CASE("family bound examples") {
  const GeometryParams g(2, 3.0);
  const DiameterBound b = family_bound(g, 0.75);
  // Exact radicand 2123/760, scaled by 1/rho.
  const double oracle = kPi * std::sqrt(2123.0 / 2280.0);
  CHECK(b.value == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(b.value == doctest::Approx(3.0314991184).epsilon(1e-10));
  CHECK(b.method == DiameterMethod::FamilyAtK);
  REQUIRE(b.params.p.has_value());
  CHECK(*b.params.p == doctest::Approx(193.0 / 49.0).epsilon(1e-15));
  CHECK(family_bound(g, 1.0).value == doctest::Approx(kPi).epsilon(1e-14));
  CHECK_THROWS_AS(family_bound(g, 0.05), AdmissibilityError);
  CHECK_THROWS_AS(family_bound(g, 0.0), DomainError);
}

TEST_CASE("family at k = 1 equals bonnet-myers") {
  for (int m = 2; m <= 50; ++m) {
    for (double rho : {0.5, 1.0, 3.0, 2.0 * m - 1.0}) {
      const GeometryParams g(m, rho);
      CHECK(rel_diff(family_bound(g, 1.0).value, bonnet_myers_bound(g)) <= 1e-14);
    }
  }
}

TEST_CASE("family bound is scale covariant") {
  test::Seeded rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = static_cast<int>(rng.integer(2, 60));
    const KInterval iv = admissible_k_interval(m);
    const double k = iv.lo + (iv.hi - iv.lo) * rng.uniform(0.01, 0.99);
    const double rho = rng.uniform(0.1, 50.0);
    const double a = family_bound(GeometryParams(m, rho), k).value * std::sqrt(rho);
    const double b = family_bound(GeometryParams(m, 1.0), k).value;
    CHECK(rel_diff(a, b) <= 1e-14);
  }
}

TEST_CASE("closed form 1/(24m) examples") {
  CHECK(closed_form_24m(GeometryParams(2, 3.0)).value ==
        doctest::Approx(kPi * (1.0 - 1.0 / 48.0)).epsilon(1e-15));
  CHECK(closed_form_24m(GeometryParams(2, 3.0)).value == doctest::Approx(3.076142).epsilon(1e-6));
  CHECK(closed_form_24m(GeometryParams(10, 19.0)).value ==
        doctest::Approx(kPi * (1.0 - 1.0 / 240.0)).epsilon(1e-15));
  CHECK(closed_form_24m(GeometryParams(2, 1.0)).value ==
        doctest::Approx(kPi * std::sqrt(3.0) * 47.0 / 48.0).epsilon(1e-15));
}

TEST_CASE("optimized family improves on the fixed choice") {
  const GeometryParams g2(2, 3.0);
  const DiameterBound opt = optimize_family(g2, 1e-9);
  CHECK(opt.method == DiameterMethod::FamilyOptimized);
  CHECK(opt.value <= 3.0314991184);
  CHECK(opt.value == doctest::Approx(2.99846).epsilon(1e-5));
  CHECK_THROWS_AS(optimize_family(g2, 0.0), DomainError);
  CHECK_THROWS_AS(optimize_family(g2, 1e-5), DomainError);

  for (int m = 2; m <= 1000; m += (m < 50 ? 1 : 37)) {
    const GeometryParams g(m, 2.0 * m - 1.0);
    const double fixed = family_bound(g, fixed_family_k(m)).value;
    const double best = optimize_family(g, 1e-9).value;
    const double bm = bonnet_myers_bound(g);
    CAPTURE(m);
    CHECK(best <= fixed + 1e-9);
    CHECK(fixed < bm);
    CHECK(best < bm);
    CHECK(fixed <= closed_form_24m(g).value);
  }
}

TEST_CASE("fixed-k family stays below the 1/(24m) closed form") {
  for (int m = 2; m <= 10000; ++m) {
    const GeometryParams g(m, 2.0 * m - 1.0);
    CHECK_MESSAGE(family_bound(g, fixed_family_k(m)).value <= closed_form_24m(g).value, m);
  }
}

TEST_CASE("chain rows") {
  const Chain24mRow row = chain_24m_row(2);
  CHECK(row.all());
  CHECK(row.psi == 157.0 / 64.0);
  CHECK(row.gain_slack > 0.0);
  const algebra::CheckReport r = chain_24m_check(10000);
  CHECK(r.passed());
  CHECK(r.id == "chain-24m");
  REQUIRE(r.min_value.has_value());
  CHECK(*r.min_value > 0.0);
  CHECK_THROWS_AS(chain_24m_row(1), DomainError);
}

TEST_CASE("method names") {
  CHECK(to_string(DiameterMethod::BonnetMyers) == "bonnet_myers");
  CHECK(to_string(DiameterMethod::RayleighSolve) == "rayleigh_solve");
}
