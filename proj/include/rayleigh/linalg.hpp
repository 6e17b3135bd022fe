#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include <Eigen/Core>

namespace rayleigh {

using cplx = std::complex<double>;

using Mat5 = Eigen::Matrix<double, 5, 5>;
using Mat4 = Eigen::Matrix<double, 4, 4>;
using CMat5 = Eigen::Matrix<cplx, 5, 5>;
using CMat4 = Eigen::Matrix<cplx, 4, 4>;
using CMat2 = Eigen::Matrix<cplx, 2, 2>;
using CMat24 = Eigen::Matrix<cplx, 2, 4>;
using CMat42 = Eigen::Matrix<cplx, 4, 2>;
using CVec5 = Eigen::Matrix<cplx, 5, 1>;
using CVec4 = Eigen::Matrix<cplx, 4, 1>;
using CVec2 = Eigen::Matrix<cplx, 2, 1>;

inline constexpr cplx kI{0.0, 1.0};

/// Determinant by LU with partial pivoting.
cplx determinant(const CMat5& m);

/// Eigenvalues of a 2×2 Hermitian matrix in closed form, ascending.
std::array<double, 2> hermitian2_eigenvalues(const CMat2& h);

/// (h + h*) / 2.
template <int N>
Eigen::Matrix<cplx, N, N> hermitian_part(const Eigen::Matrix<cplx, N, N>& h) {
  return (h + h.adjoint()) * 0.5;
}

/// Complex number over an arbitrary real type. std::complex is only
/// specified for the built-in floating types.
template <class Real>
struct Cx {
  Real re{0};
  Real im{0};

  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cx operator*(const Real& s, const Cx& a) { return {s * a.re, s * a.im}; }
  Cx conj() const { return {re, -im}; }
  Real norm() const { return re * re + im * im; }
};

/// Dense N×N Hermitian matrix over Real, row-major.
template <class Real, int N>
using HermitianArray = std::array<std::array<Cx<Real>, N>, N>;

template <class Real, int N>
HermitianArray<Real, N> to_hermitian_array(const Eigen::Matrix<cplx, N, N>& h) {
  HermitianArray<Real, N> out{};
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const cplx v = 0.5 * (h(i, j) + std::conj(h(j, i)));
      out[i][j] = {Real(v.real()), Real(v.imag())};
    }
  }
  return out;
}

/// Eigenvalues of a Hermitian matrix by the cyclic complex Jacobi method,
/// ascending. Each rotation first phase-aligns the pivot so the 2×2
/// subproblem is real symmetric.
template <class Real, int N>
std::array<Real, N> jacobi_eigenvalues(HermitianArray<Real, N> a, int max_sweeps = 64) {
  using std::abs;
  using std::sqrt;
  using C = Cx<Real>;

  Real scale(0);
  for (const auto& row : a) {
    for (const auto& v : row) {
      scale += v.norm();
    }
  }
  std::array<Real, N> out{};
  if (scale == Real(0)) {
    return out;
  }

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    Real off(0);
    for (int p = 0; p < N; ++p) {
      for (int q = p + 1; q < N; ++q) {
        off += a[p][q].norm();
      }
    }
    if (off == Real(0) || off <= std::numeric_limits<Real>::epsilon() * std::numeric_limits<Real>::epsilon() *
                                     Real(1e-4) * scale) {
      break;
    }
    for (int p = 0; p < N; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const Real mag = sqrt(a[p][q].norm());
        if (mag == Real(0)) {
          continue;
        }
        const C phase{a[p][q].re / mag, a[p][q].im / mag};
        const C phase_bar = phase.conj();
        const Real theta = (a[q][q].re - a[p][p].re) / (Real(2) * mag);
        const Real t = (theta >= Real(0) ? Real(1) : Real(-1)) / (abs(theta) + sqrt(theta * theta + Real(1)));
        const Real cs = Real(1) / sqrt(t * t + Real(1));
        const Real sn = t * cs;

        // a <- a·U, U = I except U_pp = cs, U_pq = sn, U_qp = -e^{-iφ}sn, U_qq = e^{-iφ}cs.
        for (int r = 0; r < N; ++r) {
          const C arp = a[r][p];
          const C arq = a[r][q];
          a[r][p] = cs * arp - sn * (phase_bar * arq);
          a[r][q] = sn * arp + cs * (phase_bar * arq);
        }
        // a <- U*·a.
        for (int r = 0; r < N; ++r) {
          const C apr = a[p][r];
          const C aqr = a[q][r];
          a[p][r] = cs * apr - sn * (phase * aqr);
          a[q][r] = sn * apr + cs * (phase * aqr);
        }
        a[p][q] = C{};
        a[q][p] = C{};
        a[p][p].im = Real(0);
        a[q][q].im = Real(0);
      }
    }
  }

  for (int i = 0; i < N; ++i) {
    out[i] = a[i][i].re;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Double-precision convenience overload.
template <int N>
std::array<double, N> jacobi_eigenvalues(const Eigen::Matrix<cplx, N, N>& h) {
  return jacobi_eigenvalues<double, N>(to_hermitian_array<double, N>(h));
}

}  // namespace rayleigh
