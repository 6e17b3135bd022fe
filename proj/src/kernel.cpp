#include "rayleigh/kernel.hpp"

#include <cmath>
#include <sstream>

#include "rayleigh/error.hpp"

namespace rayleigh {

SystemMatrices build_system(const Material& mat) {
  const double rho = mat.rho();
  const double lam = mat.lambda();
  const double mu = mat.mu();
  const double c1 = mat.c1();
  const double c2 = mat.c2();
  const double gap = std::sqrt(c1 * c1 - c2 * c2);

  SystemMatrices s;
  s.a1.setZero();
  s.a1(0, 2) = 1.0 / rho;
  s.a1(1, 3) = 1.0 / rho;
  s.a1(2, 0) = lam + 2.0 * mu;
  s.a1(3, 1) = mu;
  s.a1(4, 0) = lam;

  s.a2.setZero();
  s.a2(0, 3) = 1.0 / rho;
  s.a2(1, 4) = 1.0 / rho;
  s.a2(2, 1) = lam;
  s.a2(3, 0) = mu;
  s.a2(4, 1) = lam + 2.0 * mu;

  s.c.setZero();
  s.c(0, 3) = 1.0 / c1;
  s.c(1, 4) = 1.0 / c1;
  s.c(2, 0) = 2.0 * rho * c2 * gap / (c1 * c1);
  s.c(2, 2) = rho * (1.0 - 2.0 * c2 * c2 / (c1 * c1));
  s.c(3, 1) = c2 * rho / c1;
  s.c(4, 2) = rho;

  s.s1.setZero();
  s.s1(0, 3) = s.s1(3, 0) = 2.0 * c2 * gap / c1;
  s.s1(1, 4) = s.s1(4, 1) = c2;
  s.s1(2, 3) = s.s1(3, 2) = (c1 * c1 - 2.0 * c2 * c2) / c1;

  s.s2.setZero();
  s.s2(1, 3) = s.s2(3, 1) = c2;
  s.s2(2, 4) = s.s2(4, 2) = c1;

  s.s2_prime = s.s2.bottomRightCorner<4, 4>();
  return s;
}

cplx decay_root(cplx c, double speed) noexcept {
  const cplx radicand = 1.0 - (c * c) / (speed * speed);
  if (c.imag() == 0.0 && radicand.real() < 0.0) {
    const double mag = std::sqrt(-radicand.real());
    return {0.0, c.real() > 0.0 ? -mag : mag};
  }
  if (c.imag() == 0.0) {
    return {std::sqrt(radicand.real()), 0.0};
  }
  return std::sqrt(radicand);
}

DecayExponents decay_exponents(cplx c, const Material& mat) noexcept {
  return {decay_root(c, mat.c1()), decay_root(c, mat.c2())};
}

CMat5 dispersion_matrix(cplx c, cplx b, double k, const SystemMatrices& sys) {
  CMat5 m = (k * kI) * sys.s1.cast<cplx>() - (k * b) * sys.s2.cast<cplx>();
  m.diagonal().array() += c * k * kI;
  return m;
}

cplx dispersion_det(cplx c, cplx b, double k, const SystemMatrices& sys) {
  return determinant(dispersion_matrix(c, b, k, sys));
}

cplx dispersion_det(cplx c, cplx b, double k, const Material& mat) {
  return dispersion_det(c, b, k, build_system(mat));
}

bool is_singular_speed(cplx c, const Material& mat) noexcept {
  const double r = kSingularRadius * mat.c2();
  return std::abs(c) < r || std::abs(c - mat.c2()) < r || std::abs(c + mat.c2()) < r;
}

ModeBasis mode_basis(cplx c, double k, const Material& mat) {
  if (!(k > 0.0)) {
    throw InvalidArgument("wave number k must be positive");
  }
  if (is_singular_speed(c, mat)) {
    std::ostringstream os;
    os.precision(17);
    os << "speed c=" << c << " lies within the exclusion radius of 0 or ±c2";
    throw SingularSpeed(os.str());
  }
  const double c1 = mat.c1();
  const double c2 = mat.c2();
  const double gap = std::sqrt(c1 * c1 - c2 * c2);
  const auto [b1, b2] = decay_exponents(c, mat);

  ModeBasis m;
  m.c = c;
  m.k = k;
  m.b1 = b1;
  m.b2 = b2;

  const cplx first = -2.0 * c2 * k * gap / c1;
  m.w1hat << first, -2.0 * kI * c2 * b1 * k, c2 * c2 * k * (1.0 + b2 * b2) / c1, c * k, kI * b1 * c * k;
  m.w2hat << first, -kI * c2 * k * (1.0 / b2 + b2), 2.0 * c2 * c2 * k / c1, c * k, kI * c * k / b2;

  m.w1prime = m.w1hat.tail<4>();
  m.w2prime = m.w2hat.tail<4>();
  m.a.col(0) = m.w1prime;
  m.a.col(1) = m.w2prime;
  return m;
}

CVec5 state_to_physical(const CVec5& w, const Material& mat) {
  return build_system(mat).c.cast<cplx>() * w;
}

ModeResiduals mode_residuals(const ModeBasis& basis, const SystemMatrices& sys) {
  const auto r = [&](cplx b, const CVec5& w) {
    return (dispersion_matrix(basis.c, b, basis.k, sys) * w).norm() / w.norm();
  };
  return {r(basis.b1, basis.w1hat), r(basis.b2, basis.w2hat)};
}

}  // namespace rayleigh
