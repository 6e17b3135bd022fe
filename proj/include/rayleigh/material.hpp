#pragma once

namespace rayleigh {

/// Dimensionless parameters of the impedance secular equation.
struct NondimParams {
  double tau;     ///< c2² / c1², always in (0, 1)
  double delta1;  ///< Z1 / sqrt(mu·rho)
  double delta2;  ///< Z2 / sqrt(mu·rho)
};

/// Isotropic elastic half-space. Immutable once built; the only way to get
/// one is through the validating factories, so every instance satisfies
/// mu > 0 and lambda + mu > 0.
class Material {
 public:
  static Material from_lame(double rho, double lambda, double mu);
  static Material from_young_poisson(double rho, double young, double poisson);

  double rho() const noexcept { return rho_; }
  double lambda() const noexcept { return lambda_; }
  double mu() const noexcept { return mu_; }

  /// Pressure bulk speed sqrt((lambda + 2 mu) / rho).
  double c1() const noexcept { return c1_; }
  /// Shear bulk speed sqrt(mu / rho).
  double c2() const noexcept { return c2_; }

  double young() const noexcept;
  double poisson() const noexcept;

  /// Shear impedance sqrt(mu·rho); the natural unit of Z1, Z2.
  double shear_impedance() const noexcept;

  NondimParams nondimensionalize(double z1, double z2) const noexcept;

 private:
  Material(double rho, double lambda, double mu);

  double rho_;
  double lambda_;
  double mu_;
  double c1_;
  double c2_;
};

}  // namespace rayleigh
