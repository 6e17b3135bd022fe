#include <cmath>
#include <random>

#include "doctest.h"
#include "rayleigh/error.hpp"
#include "rayleigh/secular.hpp"
#include "support.hpp"

using namespace rayleigh;

TEST_CASE("regime classification") {
  CHECK(BoundaryParams::stress_free().regime() == Regime::StressFree);
  CHECK(BoundaryParams::impedance(0.3, -0.2).regime() == Regime::PureImpedance);
  CHECK(BoundaryParams::impedance(0.0, -0.2).regime() == Regime::PureImpedance);
  CHECK(BoundaryParams(cplx(-0.35, 0), cplx(-0.7, 0)).regime() == Regime::Perturbed);
  CHECK(BoundaryParams(cplx(-0.35, 1), cplx(0.0, 1)).regime() == Regime::Other);
  CHECK(BoundaryParams(cplx(0.5, 0), cplx(0.5, 0)).regime() == Regime::Other);
  CHECK(to_string(Regime::Perturbed) == "perturbed");
}

TEST_CASE("secular function: pointwise values") {
  const Material mat = test::reference_material();
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20; ++i) {
    const BoundaryParams bp(test::random_complex(rng, -2, 2, -2, 2), test::random_complex(rng, -2, 2, -2, 2));
    CHECK(std::abs(secular_pbc(0.0, bp, mat).value) == 0.0);
  }
  const SecularEval at_c2 = secular_pbc(mat.c2(), BoundaryParams::stress_free(), mat);
  CHECK(std::abs(at_c2.value - 1.0) < 1e-14);
  CHECK(at_c2.regime == Regime::StressFree);

  // The classical Rayleigh function on the subsonic interval.
  for (double c = 0.01; c < mat.c2(); c += 0.01) {
    const double classic = test::classical_rayleigh(c, mat.c1(), mat.c2());
    CHECK(std::abs(secular_impedance(c, 0.0, 0.0, mat).value - classic) <= 1e-14 * std::max(1.0, std::abs(classic)));
  }
}

TEST_CASE("reference perturbed parameters have no real zero on (0, 3]") {
  const Material mat = test::reference_material();
  const BoundaryParams bp(cplx(-0.35, 0), cplx(-0.7, 0));
  for (int i = 1; i <= 3000; ++i) {
    CHECK(std::abs(secular_pbc(1e-3 * i, bp, mat).value) > 0.0);
  }
}

TEST_CASE("impedance form matches the perturbed form with gamma = iZ") {
  const Material mat = test::reference_material();
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> z(-2, 2);
  for (int i = 0; i < 2000; ++i) {
    const cplx c = test::random_complex(rng, -4, 4, -4, 4);
    const double z1 = z(rng);
    const double z2 = z(rng);
    const cplx a = secular_impedance(c, z1, z2, mat).value;
    const cplx b = secular_pbc(c, BoundaryParams::impedance(z1, z2), mat).value;
    CHECK(test::rel_err(a, b) <= 1e-14 * 10);
  }
}

TEST_CASE("symmetry R(-c; iZ) = R(c; -iZ)") {
  const Material mat = test::reference_material();
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> z(-2, 2);
  for (int i = 0; i < 1000; ++i) {
    const cplx c = test::random_complex(rng, -4, 4, -4, 4);
    const double z1 = z(rng);
    const double z2 = z(rng);
    const cplx lhs = secular_impedance(-c, z1, z2, mat).value;
    const cplx rhs = secular_impedance(c, -z1, -z2, mat).value;
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("impedance function is real on the subsonic segment") {
  const Material mat = test::reference_material();
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> z(-2, 2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double c = u(rng) * mat.c2();
    CHECK(std::abs(secular_impedance(c, z(rng), z(rng), mat).value.imag()) <= 1e-14);
  }
}

TEST_CASE("continuity from the upper half-plane, including supersonic speeds") {
  const Material mat = test::reference_material();
  const BoundaryParams bp(cplx(-0.3, 0.4), cplx(-0.2, -0.5));
  for (double c : {-3.5, -2.0, -1.2, -0.5, 0.5, 1.2, 2.0, 3.5}) {
    const cplx on_axis = secular_pbc(c, bp, mat).value;
    double prev = std::numeric_limits<double>::infinity();
    for (double d : {1e-3, 1e-5, 1e-7, 1e-9}) {
      const double gap = std::abs(secular_pbc(cplx(c, d), bp, mat).value - on_axis);
      CHECK(gap < prev);
      prev = gap;
    }
    CHECK(prev <= 1e-6 * std::max(1.0, std::abs(on_axis)));
  }
}

TEST_CASE("perturbed form tends to the impedance form within the coefficient bound") {
  const Material mat = test::reference_material();
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> z(-2, 2);
  std::uniform_real_distribution<double> e(-1, 0);
  for (int i = 0; i < 500; ++i) {
    const cplx c = test::random_complex(rng, -3, 3, 0.01, 3);
    const double z1 = z(rng), z2 = z(rng), e1 = e(rng), e2 = e(rng);
    const GammaCoefficients g = gamma_coefficients(c, mat);
    const double bound = std::abs(e1) * std::abs(g.g1) + std::abs(e2) * std::abs(g.g2) +
                         std::abs(cplx(e1 * e2, e1 * z2 + e2 * z1)) * std::abs(g.g3);
    const cplx diff = secular_value(c, cplx(e1, z1), cplx(e2, z2), mat) - secular_value(c, cplx(0, z1), cplx(0, z2), mat);
    CHECK(std::abs(diff) <= bound * (1 + 1e-12) + 1e-13);
  }
  // Decomposition R = R0 + γ1 g1 + γ2 g2 + γ1γ2 g3.
  const cplx c(0.7, 0.4);
  const cplx g1(-0.3, 0.2), g2(0.1, -0.6);
  const GammaCoefficients g = gamma_coefficients(c, mat);
  const cplx r0 = secular_value(c, 0.0, 0.0, mat);
  CHECK(test::rel_err(secular_value(c, g1, g2, mat), r0 + g1 * g.g1 + g2 * g.g2 + g1 * g2 * g.g3) < 1e-14);
}

TEST_CASE("nondimensional form") {
  CHECK(std::abs(secular_nondim(0.0, 0.4, 0.3, -0.1)) == 0.0);
  CHECK(std::abs(secular_nondim(1.0, 0.4, 0.0, 0.0) - 1.0) < 1e-15);

  const Material mat = test::reference_material();
  const double z1 = 0.3, z2 = -0.2;
  const NondimParams nd = mat.nondimensionalize(z1, z2);
  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double c = u(rng) * mat.c2();
    const double x = c * c / (mat.c2() * mat.c2());
    const cplx a = secular_nondim(x, nd.tau, nd.delta1, nd.delta2);
    const cplx b = secular_impedance(c, z1, z2, mat).value;
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
  }
}

TEST_CASE("boundary system: display and factored routes agree") {
  const Material mat = test::reference_material();
  std::mt19937_64 rng(27);
  for (int i = 0; i < 500; ++i) {
    const cplx c = test::random_complex(rng, -3, 3, -3, 3);
    if (is_singular_speed(c, mat)) {
      continue;
    }
    const BoundaryParams bp(test::random_complex(rng, -2, 2, -2, 2), test::random_complex(rng, -2, 2, -2, 2));
    const double k = 0.5 + 2.0 * (i % 4) / 3.0;
    const CMat2 direct = boundary_system_matrix(c, k, bp, mat);
    const CMat2 factored = boundary_system_matrix_factored(c, k, bp, mat);
    CHECK((direct - factored).cwiseAbs().maxCoeff() <= 1e-12 * direct.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("boundary system: stress-free entry and impedance structure") {
  const Material mat = test::reference_material();
  const double c = 0.6, k = 1.7;
  const auto [b1, b2] = decay_exponents(c, mat);
  const CMat2 m = boundary_system_matrix(c, k, BoundaryParams::stress_free(), mat);
  const double p = mat.c2() * mat.c2() * mat.rho();
  CHECK(test::rel_err(m(0, 0), -2.0 * kI * p * b1 * k) < 1e-15);
  CHECK(m(0, 0).real() == 0.0);

  // Pure impedance with the first row multiplied by i: every entry is real
  // on the subsonic interval, with ω = ck.
  const double z1 = 0.4, z2 = -0.3;
  CMat2 imp = boundary_system_matrix(c, k, BoundaryParams::impedance(z1, z2), mat);
  imp.row(0) *= kI;
  CHECK(imp.imag().cwiseAbs().maxCoeff() < 1e-14);
  const double omega = c * k;
  CHECK(imp(0, 0).real() == doctest::Approx(2.0 * p * b1.real() * k - omega * z1).epsilon(1e-14));
  // c2²ρ(1 + b2²) = (λ + 2μ)b1² - λ
  CHECK(p * (1.0 + std::norm(b2)) ==
        doctest::Approx((mat.lambda() + 2.0 * mat.mu()) * std::norm(b1) - mat.lambda()).epsilon(1e-14));
}

TEST_CASE("determinant oracle equals k²(iμ²/b2)·R") {
  const Material mat = test::reference_material();
  std::mt19937_64 rng(28);
  std::uniform_real_distribution<double> kd(0.2, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const cplx c = test::random_complex(rng, -3, 3, -3, 3);
    if (is_singular_speed(c, mat)) {
      continue;
    }
    const BoundaryParams bp(test::random_complex(rng, -2, 2, -2, 2), test::random_complex(rng, -2, 2, -2, 2));
    const double k = kd(rng);
    const cplx det = determinant_oracle(c, k, bp, mat);
    const cplx via_r = oracle_factor(c, k, mat) * secular_pbc(c, bp, mat).value;
    const CMat2 m = boundary_system_matrix(c, k, bp, mat);
    const double entry_scale = m.cwiseAbs().maxCoeff();
    CHECK(std::abs(det - via_r) <= 1e-10 * std::max(std::abs(det), entry_scale * entry_scale));
  }

  // Stress-free hand expansion: i c2⁴ρ²k²[(1+b2²)²/b2 - 4b1].
  const double c = 0.55, k = 1.25;
  const auto [b1, b2] = decay_exponents(c, mat);
  const double c2 = mat.c2();
  const cplx hand = kI * std::pow(c2, 4) * mat.rho() * mat.rho() * k * k * ((1.0 + b2 * b2) * (1.0 + b2 * b2) / b2 - 4.0 * b1);
  CHECK(test::rel_err(determinant_oracle(c, k, BoundaryParams::stress_free(), mat), hand) < 1e-13);
}

TEST_CASE("boundary system propagates singular speeds") {
  const Material mat = test::reference_material();
  CHECK_THROWS_AS(boundary_system_matrix(mat.c2(), 1.0, BoundaryParams::stress_free(), mat), SingularSpeed);
  CHECK_THROWS_AS(determinant_oracle(0.0, 1.0, BoundaryParams::stress_free(), mat), SingularSpeed);
}
