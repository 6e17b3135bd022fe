#include "rayleigh/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rayleigh/error.hpp"

namespace rayleigh {

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

/// Eigenvalues of the 2×2 Hermitian block [[β·s²ρ², s(1+βργ)], [·, β|γ|²]]
/// from the closed form, with the smaller root rationalized.
struct BlockEigen {
  double d;
  double lower;
  double upper;
};

BlockEigen block_eigen(double speed, cplx gamma, double rho, double beta) {
  const double trace = beta * (speed * speed * rho * rho + std::norm(gamma));
  const double d = beta * beta * std::pow(speed * speed * rho * rho + std::norm(gamma), 2) +
                   4.0 * speed * speed * (1.0 + 2.0 * beta * rho * gamma.real());
  const double root = std::sqrt(std::max(d, 0.0));
  const double upper = 0.5 * (trace + root);
  // det = (trace² - d) / 4, so λ- = (trace - √d)/2 = 2·det / (trace + √d); det is
  // -s²(1 + 2βρ Re γ) after the |γ|² terms cancel.
  const double det = -speed * speed * (1.0 + 2.0 * beta * rho * gamma.real());
  const double lower = upper > 0.0 ? det / upper : 0.5 * (trace - root);
  return {d, lower, upper};
}

HermitianArray<Quad, 4> shifted_form_quad(const BoundaryParams& bp, const Material& mat, double shift) {
  // Assembled entry by entry in quad precision from the double inputs.
  const Quad rho = mat.rho();
  const Quad c1 = mat.c1();
  const Quad c2 = mat.c2();
  const Quad e1 = bp.gamma1().real();
  const Quad e2 = bp.gamma2().real();
  const Quad z1 = bp.gamma1().imag();
  const Quad z2 = bp.gamma2().imag();
  const Quad beta = -Quad(1) / (Quad(2) * rho * e1) - Quad(1) / (Quad(2) * rho * e2);

  HermitianArray<Quad, 4> m{};
  m[0][0] = {beta * c2 * c2 * rho * rho - Quad(shift), 0};
  m[1][1] = {beta * c1 * c1 * rho * rho - Quad(shift), 0};
  m[2][2] = {beta * (e1 * e1 + z1 * z1) - Quad(shift), 0};
  m[3][3] = {beta * (e2 * e2 + z2 * z2) - Quad(shift), 0};
  m[0][2] = {c2 * (1 + beta * rho * e1), c2 * beta * rho * z1};
  m[2][0] = m[0][2].conj();
  m[1][3] = {c1 * (1 + beta * rho * e2), c1 * beta * rho * z2};
  m[3][1] = m[1][3].conj();
  return m;
}

}  // namespace

CMat4 shifted_boundary_form(const BoundaryParams& bp, const Material& mat, double beta) {
  const CMat24 b = boundary_operator(bp, mat);
  const SystemMatrices sys = build_system(mat);
  return beta * (b.adjoint() * b) + sys.s2_prime.cast<cplx>();
}

TheoremReport verify_maint11(const BoundaryParams& bp, const Material& mat) {
  if (bp.regime() != Regime::Perturbed) {
    throw RegimeError("positive-definiteness certificate requires Re γ1 < 0 and Re γ2 < 0 (regime is " +
                      std::string(to_string(bp.regime())) + "); beta0 is undefined otherwise");
  }
  const double rho = mat.rho();
  TheoremReport rep;
  rep.beta0 = -1.0 / (2.0 * rho * bp.eps1()) - 1.0 / (2.0 * rho * bp.eps2());

  const BlockEigen first = block_eigen(mat.c1(), bp.gamma2(), rho, rep.beta0);
  const BlockEigen second = block_eigen(mat.c2(), bp.gamma1(), rho, rep.beta0);
  rep.d1 = first.d;
  rep.d2 = second.d;
  rep.lambdas = {first.lower, first.upper, second.lower, second.upper};
  rep.epsilon = std::min(first.lower, second.lower);
  rep.epsilon_used = (1.0 - 1e-9) * rep.epsilon;

  const auto spectrum = jacobi_eigenvalues<Quad, 4>(shifted_form_quad(bp, mat, 0.0));
  for (int i = 0; i < 4; ++i) {
    rep.jacobi[i] = static_cast<double>(spectrum[i]);
  }
  std::array<double, 4> closed = rep.lambdas;
  std::sort(closed.begin(), closed.end());
  for (int i = 0; i < 4; ++i) {
    const double denom = std::max(std::abs(closed[i]), std::numeric_limits<double>::min());
    rep.max_rel_mismatch = std::max(rep.max_rel_mismatch, std::abs(closed[i] - rep.jacobi[i]) / denom);
  }

  const auto shifted = jacobi_eigenvalues<Quad, 4>(shifted_form_quad(bp, mat, rep.epsilon_used));
  rep.min_eig_M = static_cast<double>(shifted[0]);

  const bool all_positive = std::all_of(rep.lambdas.begin(), rep.lambdas.end(), [](double l) { return l > 0.0; });
  rep.pass = rep.beta0 > 0.0 && std::isfinite(rep.beta0) && all_positive && rep.epsilon > 0.0 &&
             shifted[0] > 0 && rep.max_rel_mismatch <= 1e-10;
  return rep;
}

CMat2 restricted_quadratic_form(cplx c, double k, const Material& mat) {
  const ModeBasis basis = mode_basis(c, k, mat);
  const SystemMatrices sys = build_system(mat);
  const CMat2 form = basis.a.adjoint() * sys.s2_prime.cast<cplx>() * basis.a;
  return hermitian_part<2>(form);
}

double quadratic_form_scale(cplx c, double k, const Material& mat) {
  const ModeBasis basis = mode_basis(c, k, mat);
  return mat.c1() * basis.a.squaredNorm();
}

double key_inequality_ratio(cplx c, const BoundaryParams& bp, const Material& mat) {
  const ModeBasis basis = mode_basis(c, 1.0, mat);
  const CMat42& a = basis.a;
  const CMat2 gram = hermitian_part<2>(CMat2(a.adjoint() * a));
  const CMat2 ba = boundary_operator(bp, mat) * a;
  const CMat2 h = hermitian_part<2>(CMat2(ba.adjoint() * ba));
  // Reduce to a standard problem with the Cholesky factor of the Gram matrix.
  const Eigen::LLT<CMat2> llt(gram);
  const CMat2 l = llt.matrixL();
  const CMat2 linv = l.inverse();
  const CMat2 reduced = linv * h * linv.adjoint();
  return hermitian2_eigenvalues(reduced)[0];
}

double min_singular_value(const ModeBasis& basis) {
  // SVD rather than the Gram matrix, which squares the conditioning.
  const Eigen::JacobiSVD<CMat42> svd(basis.a);
  return svd.singularValues()(1);
}

EnergyCheck energy_identity_check(cplx c, double k, cplx amp1, cplx amp2, const Material& mat,
                                  const std::vector<double>& x2_grid) {
  if (x2_grid.size() < 3) {
    throw InvalidArgument("energy identity check needs at least 3 grid points");
  }
  for (std::size_t i = 0; i < x2_grid.size(); ++i) {
    if (!(x2_grid[i] >= 0.0) || (i > 0 && !(x2_grid[i] > x2_grid[i - 1]))) {
      throw InvalidArgument("x2 grid must be increasing and non-negative");
    }
  }
  const ModeBasis basis = mode_basis(c, k, mat);
  const SystemMatrices sys = build_system(mat);
  const CMat5 s2 = sys.s2.cast<cplx>();

  const std::size_t n = x2_grid.size();
  std::vector<double> flux(n);
  std::vector<double> mass(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x2_grid[i];
    const CVec5 p = amp1 * std::exp(-k * basis.b1 * x) * basis.w1hat + amp2 * std::exp(-k * basis.b2 * x) * basis.w2hat;
    flux[i] = (p.adjoint() * s2 * p)(0, 0).real();
    mass[i] = p.squaredNorm();
  }

  const double mass_max = *std::max_element(mass.begin(), mass.end());
  const double scale = k * std::max({1.0, std::abs(basis.b1), std::abs(basis.b2), std::abs(c) / mat.c2()}) *
                       mat.c1() * mass_max;
  EnergyCheck out;
  if (scale == 0.0) {
    return out;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = x2_grid[i] - x2_grid[i - 1];
    const double hr = x2_grid[i + 1] - x2_grid[i];
    // Second-order three-point derivative on a non-uniform grid.
    const double deriv = (-hr / (hl * (hl + hr))) * flux[i - 1] + ((hr - hl) / (hl * hr)) * flux[i] +
                         (hl / (hr * (hl + hr))) * flux[i + 1];
    const double rhs = 2.0 * k * mass[i] * c.imag();
    out.max_residual = std::max(out.max_residual, std::abs(deriv - rhs) / scale);
  }
  const double slack = 1e-12 * std::abs(*std::max_element(flux.begin(), flux.end(),
                                                          [](double a, double b) { return std::abs(a) < std::abs(b); }));
  for (std::size_t i = 1; i < n; ++i) {
    if (flux[i] < flux[i - 1] - slack) {
      out.non_decreasing = false;
    }
  }
  return out;
}

HurwitzReport hurwitz_convergence_check(double z1, double z2, const Material& mat, const Rect& region,
                                        const std::vector<int>& n_values, std::size_t grid_re,
                                        std::size_t grid_im) {
  if (!(region.im_min > 0.0) || region.re_max < region.re_min || region.im_max < region.im_min) {
    throw InvalidArgument("Hurwitz region must be a closed rectangle inside Im c > 0");
  }
  if (grid_re == 0 || grid_im == 0) {
    throw InvalidArgument("Hurwitz grid must have at least one point per axis");
  }
  for (int n : n_values) {
    if (n <= 0) {
      throw InvalidArgument("sequence indices must be positive");
    }
  }

  std::vector<cplx> pts;
  pts.reserve(grid_re * grid_im);
  for (std::size_t j = 0; j < grid_im; ++j) {
    const double y = grid_im == 1 ? region.im_min
                                  : region.im_min + (region.im_max - region.im_min) * static_cast<double>(j) /
                                                        static_cast<double>(grid_im - 1);
    for (std::size_t i = 0; i < grid_re; ++i) {
      const double x = grid_re == 1 ? region.re_min
                                    : region.re_min + (region.re_max - region.re_min) * static_cast<double>(i) /
                                                          static_cast<double>(grid_re - 1);
      pts.emplace_back(x, y);
    }
  }

  HurwitzReport rep;
  std::vector<cplx> limit(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const GammaCoefficients g = gamma_coefficients(pts[i], mat);
    rep.m1 = std::max(rep.m1, std::abs(g.g1));
    rep.m2 = std::max(rep.m2, std::abs(g.g2));
    rep.m3 = std::max(rep.m3, std::abs(g.g3));
    limit[i] = secular_value(pts[i], cplx(0.0, z1), cplx(0.0, z2), mat);
  }

  const cplx iz1(0.0, z1);
  const cplx iz2(0.0, z2);
  for (int n : n_values) {
    const double inv = 1.0 / static_cast<double>(n);
    const cplx g1 = -inv + iz1;
    const cplx g2 = -inv + iz2;
    HurwitzRow row;
    row.n = n;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      row.sup_diff = std::max(row.sup_diff, std::abs(secular_value(pts[i], g1, g2, mat) - limit[i]));
    }
    row.r_n = inv * rep.m1 + inv * rep.m2 + std::abs(g1 * g2 - iz1 * iz2) * rep.m3;
    rep.bound_holds = rep.bound_holds && row.sup_diff <= row.r_n * (1.0 + 1e-9);
    if (!rep.rows.empty() && n > rep.rows.back().n && !(row.r_n < rep.rows.back().r_n)) {
      rep.bound_decreasing = false;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace rayleigh
