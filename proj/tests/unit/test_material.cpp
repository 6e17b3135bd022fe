#include <cmath>
#include <random>

#include "doctest.h"
#include "rayleigh/error.hpp"
#include "rayleigh/material.hpp"
#include "support.hpp"

using namespace rayleigh;

TEST_CASE("lame construction derives bulk speeds") {
  const Material m = Material::from_lame(1.0, 0.4, 0.8);
  CHECK(m.c1() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(m.c2() == doctest::Approx(std::sqrt(0.8)).epsilon(1e-15));
  CHECK(m.c1() == doctest::Approx(1.414214).epsilon(1e-6));
  CHECK(m.c2() == doctest::Approx(0.894427).epsilon(1e-6));

  const Material unit = Material::from_lame(1.0, 1.0, 1.0);
  CHECK(unit.c1() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(unit.c2() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("lame construction rejects violated inequalities") {
  CHECK_THROWS_WITH_AS(Material::from_lame(1.0, -0.5, 0.4), doctest::Contains("lambda + mu > 0"),
                       ConstraintViolation);
  CHECK_THROWS_WITH_AS(Material::from_lame(1.0, 1.0, 0.0), doctest::Contains("mu > 0"), ConstraintViolation);
  CHECK_THROWS_WITH_AS(Material::from_lame(1.0, 1.0, -1.0), doctest::Contains("mu > 0"), ConstraintViolation);
  CHECK_THROWS_AS(Material::from_lame(0.0, 1.0, 1.0), ConstraintViolation);
  CHECK_THROWS_AS(Material::from_lame(1.0, NAN, 1.0), ConstraintViolation);
  // lambda may be negative as long as lambda + mu > 0
  CHECK_NOTHROW(Material::from_lame(1.0, -0.3, 0.4));
}

TEST_CASE("young-poisson conversion") {
  const Material a = Material::from_young_poisson(1.0, 2.5, 0.25);
  CHECK(a.mu() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.lambda() == doctest::Approx(1.0).epsilon(1e-15));

  // Reference material: exact conversion, not the rounded (0.8, 0.4).
  const Material fig = Material::from_young_poisson(1.0, 1.86, 0.16);
  CHECK(fig.mu() == doctest::Approx(0.801724137931034).epsilon(1e-13));
  CHECK(fig.lambda() == doctest::Approx(0.377281947261663).epsilon(1e-13));

  CHECK_THROWS_AS(Material::from_young_poisson(1.0, 1.0, 0.5), ConstraintViolation);
  CHECK_THROWS_AS(Material::from_young_poisson(1.0, 1.0, -1.0), ConstraintViolation);
  CHECK_THROWS_AS(Material::from_young_poisson(1.0, 0.0, 0.2), ConstraintViolation);
}

TEST_CASE("nondimensional parameters") {
  const auto lam_eq_mu = Material::from_lame(2.7, 1.3, 1.3).nondimensionalize(0.0, 0.0);
  CHECK(lam_eq_mu.tau == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(lam_eq_mu.delta1 == 0.0);
  CHECK(lam_eq_mu.delta2 == 0.0);

  const auto ref = test::reference_material().nondimensionalize(0.8, 0.0);
  CHECK(ref.delta1 == doctest::Approx(0.8 / std::sqrt(0.8)).epsilon(1e-15));
  CHECK(ref.delta1 == doctest::Approx(0.894427).epsilon(1e-6));
}

TEST_CASE("material invariants over random draws") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Material m = test::random_material(rng);
    CHECK(m.c1() > m.c2());
    CHECK(m.c2() > 0.0);
    // c1² - 2c2² = lambda/rho
    CHECK(m.c1() * m.c1() - 2.0 * m.c2() * m.c2() ==
          doctest::Approx(m.lambda() / m.rho()).epsilon(1e-12).scale(m.mu() / m.rho()));
    const double tau = m.nondimensionalize(0.0, 0.0).tau;
    CHECK(tau > 0.0);
    CHECK(tau < 1.0);
    CHECK((tau < 0.5) == (m.lambda() > 0.0));

    // (E, nu) round trip; only defined when 3λ + 2μ > 0.
    if (3.0 * m.lambda() + 2.0 * m.mu() <= 0.0) {
      CHECK(m.young() <= 0.0);
      continue;
    }
    const Material back = Material::from_young_poisson(m.rho(), m.young(), m.poisson());
    CHECK(back.lambda() == doctest::Approx(m.lambda()).epsilon(1e-12).scale(m.mu()));
    CHECK(back.mu() == doctest::Approx(m.mu()).epsilon(1e-12));
  }
}

TEST_CASE("young-poisson round trip reproduces inputs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> e_d(0.1, 10.0);
  std::uniform_real_distribution<double> nu_d(-0.99, 0.49);
  for (int i = 0; i < 500; ++i) {
    const double e = e_d(rng);
    const double nu = nu_d(rng);
    const Material m = Material::from_young_poisson(1.0, e, nu);
    CHECK(m.young() == doctest::Approx(e).epsilon(1e-12));
    CHECK(m.poisson() == doctest::Approx(nu).epsilon(1e-12));
  }
}
