#include "rayleigh/material.hpp"

#include <cmath>
#include <sstream>

#include "rayleigh/error.hpp"

namespace rayleigh {

namespace {

std::string describe(double rho, double lambda, double mu) {
  std::ostringstream os;
  os.precision(17);
  os << "(rho=" << rho << ", lambda=" << lambda << ", mu=" << mu << ")";
  return os.str();
}

}  // namespace

Material::Material(double rho, double lambda, double mu)
    : rho_(rho),
      lambda_(lambda),
      mu_(mu),
      c1_(std::sqrt((lambda + 2.0 * mu) / rho)),
      c2_(std::sqrt(mu / rho)) {}

Material Material::from_lame(double rho, double lambda, double mu) {
  if (!std::isfinite(rho) || !std::isfinite(lambda) || !std::isfinite(mu)) {
    throw ConstraintViolation("material parameters must be finite " + describe(rho, lambda, mu));
  }
  if (!(rho > 0.0)) {
    throw ConstraintViolation("rho > 0 violated " + describe(rho, lambda, mu));
  }
  if (!(mu > 0.0)) {
    throw ConstraintViolation("mu > 0 violated " + describe(rho, lambda, mu));
  }
  if (!(lambda + mu > 0.0)) {
    throw ConstraintViolation("lambda + mu > 0 violated " + describe(rho, lambda, mu));
  }
  return Material(rho, lambda, mu);
}

Material Material::from_young_poisson(double rho, double young, double poisson) {
  if (!(young > 0.0) || !std::isfinite(young)) {
    throw ConstraintViolation("Young's modulus E > 0 violated");
  }
  if (!(poisson > -1.0 && poisson < 0.5)) {
    throw ConstraintViolation("Poisson ratio -1 < nu < 0.5 violated");
  }
  const double mu = young / (2.0 * (1.0 + poisson));
  const double lambda = young * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson));
  return from_lame(rho, lambda, mu);
}

double Material::young() const noexcept {
  return mu_ * (3.0 * lambda_ + 2.0 * mu_) / (lambda_ + mu_);
}

double Material::poisson() const noexcept { return lambda_ / (2.0 * (lambda_ + mu_)); }

double Material::shear_impedance() const noexcept { return std::sqrt(mu_ * rho_); }

NondimParams Material::nondimensionalize(double z1, double z2) const noexcept {
  const double s = shear_impedance();
  return {mu_ / (lambda_ + 2.0 * mu_), z1 / s, z2 / s};
}

}  // namespace rayleigh
