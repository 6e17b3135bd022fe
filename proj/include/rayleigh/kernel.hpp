#pragma once

#include "rayleigh/linalg.hpp"
#include "rayleigh/material.hpp"

namespace rayleigh {

/// Velocity-stress matrices, the change of variables y = C·w and the
/// symmetric matrices of the transformed system. Every entry is written from
/// its closed form, so S1 = C⁻¹A1C and S2 = C⁻¹A2C are checks, not definitions.
struct SystemMatrices {
  Mat5 a1;
  Mat5 a2;
  Mat5 c;
  Mat5 s1;
  Mat5 s2;
  Mat4 s2_prime;  ///< S2 with its first row and column removed
};

SystemMatrices build_system(const Material& mat);

/// Principal-branch decay exponents b_j = sqrt(1 - c²/c_j²).
struct DecayExponents {
  cplx b1;
  cplx b2;
};

/// Principal branch off the real axis. On the real supersonic rays, where the
/// radicand is a negative real, the value is the limit from Im c → 0⁺:
/// b_j = -i·sign(c)·sqrt(c²/c_j² - 1). Re b_j ≥ 0 everywhere and is zero only
/// on those rays.
DecayExponents decay_exponents(cplx c, const Material& mat) noexcept;

/// Principal square root of 1 - c²/s² with the same real-axis convention.
cplx decay_root(cplx c, double speed) noexcept;

/// Matrix of the dispersion system, c·k·i·I + k·i·S1 - k·b·S2.
CMat5 dispersion_matrix(cplx c, cplx b, double k, const SystemMatrices& sys);

/// det(c·k·i·I + k·i·S1 - k·b·S2) by partial-pivoted elimination.
cplx dispersion_det(cplx c, cplx b, double k, const Material& mat);
cplx dispersion_det(cplx c, cplx b, double k, const SystemMatrices& sys);

/// Exclusion radius around the singular speeds 0 and ±c2, as a fraction of c2.
inline constexpr double kSingularRadius = 1e-9;

/// True when c is within kSingularRadius·c2 of 0, c2 or -c2.
bool is_singular_speed(cplx c, const Material& mat) noexcept;

/// The two decaying surface modes at speed c and wave number k.
struct ModeBasis {
  cplx c;
  double k;
  cplx b1;
  cplx b2;
  CVec5 w1hat;
  CVec5 w2hat;
  CVec4 w1prime;
  CVec4 w2prime;
  CMat42 a;  ///< columns w1prime, w2prime
};

/// Throws SingularSpeed inside the exclusion zones, or InvalidArgument for k ≤ 0.
ModeBasis mode_basis(cplx c, double k, const Material& mat);

/// y = C·w, read as (v1, v2, σ11, σ12, σ22).
CVec5 state_to_physical(const CVec5& w, const Material& mat);

/// ‖(c·k·i·I + k·i·S1 - k·b_j·S2)·ŵ_j‖ / ‖ŵ_j‖ for both modes.
struct ModeResiduals {
  double r1;
  double r2;
};

ModeResiduals mode_residuals(const ModeBasis& basis, const SystemMatrices& sys);

}  // namespace rayleigh
