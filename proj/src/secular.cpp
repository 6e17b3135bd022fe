#include "rayleigh/secular.hpp"

namespace rayleigh {

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::StressFree:
      return "stress_free";
    case Regime::PureImpedance:
      return "pure_impedance";
    case Regime::Perturbed:
      return "perturbed";
    case Regime::Other:
      return "other";
  }
  return "other";
}

namespace {

Regime classify(cplx g1, cplx g2) noexcept {
  if (g1 == 0.0 && g2 == 0.0) {
    return Regime::StressFree;
  }
  if (g1.real() == 0.0 && g2.real() == 0.0) {
    return Regime::PureImpedance;
  }
  if (g1.real() < 0.0 && g2.real() < 0.0) {
    return Regime::Perturbed;
  }
  return Regime::Other;
}

}  // namespace

BoundaryParams::BoundaryParams(cplx gamma1, cplx gamma2) noexcept
    : gamma1_(gamma1), gamma2_(gamma2), regime_(classify(gamma1, gamma2)) {}

cplx secular_value(cplx c, cplx gamma1, cplx gamma2, const Material& mat) noexcept {
  const double c2sq = mat.c2() * mat.c2();
  const double mu = mat.mu();
  const auto [b1, b2] = decay_exponents(c, mat);
  const cplx csq = c * c;
  const cplx lead = 2.0 - csq / c2sq;
  return lead * lead - 4.0 * b2 * b1 - (csq * c * kI / (mu * c2sq)) * (gamma1 * b2 + gamma2 * b1) +
         csq * (gamma1 * gamma2 / (mu * mu)) * (1.0 - b2 * b1);
}

SecularEval secular_pbc(cplx c, const BoundaryParams& bp, const Material& mat) noexcept {
  const auto [b1, b2] = decay_exponents(c, mat);
  return {c, secular_value(c, bp.gamma1(), bp.gamma2(), mat), b1, b2, bp.regime()};
}

SecularEval secular_impedance(cplx c, double z1, double z2, const Material& mat) noexcept {
  const double c2sq = mat.c2() * mat.c2();
  const double mu = mat.mu();
  const auto [b1, b2] = decay_exponents(c, mat);
  const cplx csq = c * c;
  const cplx lead = 2.0 - csq / c2sq;
  const cplx value = lead * lead - 4.0 * b2 * b1 + (csq * c / (mu * c2sq)) * (z1 * b2 + z2 * b1) +
                     csq * (z1 * z2 / (mu * mu)) * (b2 * b1 - 1.0);
  return {c, value, b1, b2, BoundaryParams::impedance(z1, z2).regime()};
}

cplx secular_nondim(cplx x, double tau, double delta1, double delta2) noexcept {
  // Same real-axis convention as decay_root, with c = c2·sqrt(x) approached from above.
  const auto root = [&](double scale) -> cplx {
    const cplx radicand = 1.0 - scale * x;
    if (x.imag() == 0.0 && radicand.real() < 0.0) {
      return {0.0, -std::sqrt(-radicand.real())};
    }
    if (x.imag() == 0.0) {
      return {std::sqrt(radicand.real()), 0.0};
    }
    return std::sqrt(radicand);
  };
  const cplx s2 = root(1.0);
  const cplx s1 = root(tau);
  const cplx lead = 2.0 - x;
  return lead * lead - 4.0 * s2 * s1 + x * std::sqrt(x) * (delta1 * s2 + delta2 * s1) +
         x * delta1 * delta2 * (s2 * s1 - 1.0);
}

CMat2 boundary_system_matrix(cplx c, double k, const BoundaryParams& bp, const Material& mat) {
  const ModeBasis basis = mode_basis(c, k, mat);
  const cplx b1 = basis.b1;
  const cplx b2 = basis.b2;
  const cplx g1 = bp.gamma1();
  const cplx g2 = bp.gamma2();
  const double p = mat.c2() * mat.c2() * mat.rho();

  CMat2 m;
  m(0, 0) = -2.0 * kI * p * b1 * k + c * k * g1;
  m(0, 1) = -kI * p * k * (b2 + 1.0 / b2) + c * k * g1;
  m(1, 0) = p * k * (1.0 + b2 * b2) + c * k * g2 * kI * b1;
  m(1, 1) = 2.0 * p * k + k * c * g2 * kI / b2;
  return m;
}

CMat24 boundary_operator(const BoundaryParams& bp, const Material& mat) noexcept {
  CMat24 b = CMat24::Zero();
  b(0, 0) = mat.c2() * mat.rho();
  b(0, 2) = bp.gamma1();
  b(1, 1) = mat.c1() * mat.rho();
  b(1, 3) = bp.gamma2();
  return b;
}

CMat2 boundary_system_matrix_factored(cplx c, double k, const BoundaryParams& bp, const Material& mat) {
  const ModeBasis basis = mode_basis(c, k, mat);
  return boundary_operator(bp, mat) * basis.a;
}

cplx determinant_oracle(cplx c, double k, const BoundaryParams& bp, const Material& mat) {
  const CMat2 m = boundary_system_matrix(c, k, bp, mat);
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

cplx oracle_factor(cplx c, double k, const Material& mat) noexcept {
  const double mu = mat.mu();
  return k * k * kI * mu * mu / decay_root(c, mat.c2());
}

GammaCoefficients gamma_coefficients(cplx c, const Material& mat) noexcept {
  const double c2sq = mat.c2() * mat.c2();
  const double mu = mat.mu();
  const auto [b1, b2] = decay_exponents(c, mat);
  const cplx cube = c * c * c * kI / (mu * c2sq);
  return {-cube * b2, -cube * b1, c * c / (mu * mu) * (1.0 - b2 * b1)};
}

}  // namespace rayleigh
