#pragma once

#include <string_view>

#include "rayleigh/kernel.hpp"
#include "rayleigh/linalg.hpp"
#include "rayleigh/material.hpp"

namespace rayleigh {

enum class Regime { StressFree, PureImpedance, Perturbed, Other };

std::string_view to_string(Regime r) noexcept;

/// Surface boundary coefficients (γ1, γ2) = (ε1 + iZ1, ε2 + iZ2) of
/// σ12 + γ1·v1 = 0, σ22 + γ2·v2 = 0.
class BoundaryParams {
 public:
  BoundaryParams(cplx gamma1, cplx gamma2) noexcept;

  static BoundaryParams stress_free() noexcept { return {0.0, 0.0}; }
  static BoundaryParams impedance(double z1, double z2) noexcept { return {cplx(0.0, z1), cplx(0.0, z2)}; }

  cplx gamma1() const noexcept { return gamma1_; }
  cplx gamma2() const noexcept { return gamma2_; }
  double eps1() const noexcept { return gamma1_.real(); }
  double eps2() const noexcept { return gamma2_.real(); }
  double z1() const noexcept { return gamma1_.imag(); }
  double z2() const noexcept { return gamma2_.imag(); }
  Regime regime() const noexcept { return regime_; }

 private:
  cplx gamma1_;
  cplx gamma2_;
  Regime regime_;
};

struct SecularEval {
  cplx c;
  cplx value;
  cplx b1;
  cplx b2;
  Regime regime;
};

/// R(c; γ1, γ2). Pole-free, defined on the whole plane including c = 0 and ±c2.
SecularEval secular_pbc(cplx c, const BoundaryParams& bp, const Material& mat) noexcept;

/// Bare value of R(c; γ1, γ2), for inner loops.
cplx secular_value(cplx c, cplx gamma1, cplx gamma2, const Material& mat) noexcept;

/// Full impedance form R(c; iZ1, iZ2), evaluated from its own arrangement of terms.
SecularEval secular_impedance(cplx c, double z1, double z2, const Material& mat) noexcept;

/// Impedance secular function in x = c²/c2², τ = c2²/c1², δ_j = Z_j/sqrt(μρ).
cplx secular_nondim(cplx x, double tau, double delta1, double delta2) noexcept;

/// The 2×2 amplitude system of the boundary condition, as displayed.
CMat2 boundary_system_matrix(cplx c, double k, const BoundaryParams& bp, const Material& mat);

/// Same matrix assembled as B_γ·A with A = [w1', w2'] (the mode vectors already carry k).
CMat2 boundary_system_matrix_factored(cplx c, double k, const BoundaryParams& bp, const Material& mat);

/// B_γ = [[c2ρ, 0, γ1, 0], [0, c1ρ, 0, γ2]].
CMat24 boundary_operator(const BoundaryParams& bp, const Material& mat) noexcept;

/// det of the amplitude system; a test oracle for R.
cplx determinant_oracle(cplx c, double k, const BoundaryParams& bp, const Material& mat);

/// Factor relating the oracle to R: det = k²·(iμ²/b2)·R.
cplx oracle_factor(cplx c, double k, const Material& mat) noexcept;

/// The γ-coefficient functions of R: R = R0 + γ1·g1 + γ2·g2 + γ1γ2·g3.
struct GammaCoefficients {
  cplx g1;
  cplx g2;
  cplx g3;
};

GammaCoefficients gamma_coefficients(cplx c, const Material& mat) noexcept;

}  // namespace rayleigh
