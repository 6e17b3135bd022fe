#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "rayleigh/kernel.hpp"
#include "rayleigh/linalg.hpp"
#include "rayleigh/material.hpp"
#include "rayleigh/secular.hpp"
#include "rayleigh/winding.hpp"

namespace rayleigh {

/// Certification of the positive-definite quadratic form behind the
/// non-vanishing result for Re γ1, Re γ2 < 0.
struct TheoremReport {
  double beta0 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  /// λ1-, λ1+, λ2-, λ2+ of β0·B*B + S2' from the closed form.
  std::array<double, 4> lambdas{};
  /// Same spectrum from the Jacobi solver, ascending.
  std::array<double, 4> jacobi{};
  double epsilon = 0.0;         ///< min(λ1-, λ2-)
  double epsilon_used = 0.0;    ///< (1 - 1e-9)·epsilon, the shift in M
  double min_eig_M = 0.0;       ///< smallest eigenvalue of β0·B*B - ε'·I + S2'
  double max_rel_mismatch = 0.0; ///< closed form vs Jacobi, relative per eigenvalue
  bool pass = false;
};

/// Throws RegimeError unless bp is Perturbed.
TheoremReport verify_maint11(const BoundaryParams& bp, const Material& mat);

/// β·B*B + S2' as displayed in the proof.
CMat4 shifted_boundary_form(const BoundaryParams& bp, const Material& mat, double beta);

/// A*·S2'·A from the numerical mode basis, Hermitian-symmetrized.
CMat2 restricted_quadratic_form(cplx c, double k, const Material& mat);

/// Natural magnitude of A*·S2'·A: c1·‖A‖_F².
double quadratic_form_scale(cplx c, double k, const Material& mat);

/// Smallest value of ‖B_γ r‖² / ‖r‖² over r in span{w1', w2'}, from the
/// 2×2 generalized eigenproblem (A*B*BA) x = μ (A*A) x.
double key_inequality_ratio(cplx c, const BoundaryParams& bp, const Material& mat);

/// Smallest singular value of A = [w1', w2'] via its Gram matrix.
double min_singular_value(const ModeBasis& basis);

struct EnergyCheck {
  double max_residual = 0.0;  ///< max over interior points, relative to the natural scale
  bool non_decreasing = true; ///< p*S2p did not decrease along the grid
};

/// Finite-difference check of d/dx2 (p*S2p) = 2k|p|²·Im c for
/// p(x2) = amp1·e^{-k b1 x2}ŵ1 + amp2·e^{-k b2 x2}ŵ2. The grid may be
/// non-uniform; needs at least 3 increasing points ≥ 0.
EnergyCheck energy_identity_check(cplx c, double k, cplx amp1, cplx amp2, const Material& mat,
                                  const std::vector<double>& x2_grid);

struct HurwitzRow {
  int n = 0;
  double sup_diff = 0.0;  ///< sup over the grid of |f_n - f|
  double r_n = 0.0;       ///< the c-independent bound
};

struct HurwitzReport {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  std::vector<HurwitzRow> rows;
  bool bound_holds = true;    ///< sup_diff ≤ r_n·(1 + 1e-9) for every row
  bool bound_decreasing = true; ///< r_n strictly decreasing along increasing n
};

/// Uniform convergence of f_n = R(·; -1/n + iZ1, -1/n + iZ2) to
/// f = R(·; iZ1, iZ2) on a closed rectangle inside Im c > 0, sampled on a
/// grid_re × grid_im lattice (a one-point grid uses the rectangle's corner
/// (re_min, im_min)).
HurwitzReport hurwitz_convergence_check(double z1, double z2, const Material& mat, const Rect& region,
                                        const std::vector<int>& n_values, std::size_t grid_re = 81,
                                        std::size_t grid_im = 41);

}  // namespace rayleigh
