#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>

#include "rayleigh/linalg.hpp"
#include "rayleigh/material.hpp"

namespace rayleigh::test {

inline Material reference_material() { return Material::from_lame(1.0, 0.4, 0.8); }

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)}); }

/// Random valid material: rho in [0.5, 3], mu in [0.1, 5], lambda with lambda + mu in (0.05·mu, 6·mu).
inline Material random_material(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rho_d(0.5, 3.0);
  std::uniform_real_distribution<double> mu_d(0.1, 5.0);
  std::uniform_real_distribution<double> frac(0.05, 6.0);
  const double mu = mu_d(rng);
  const double lambda = frac(rng) * mu - mu;
  return Material::from_lame(rho_d(rng), lambda, mu);
}

inline cplx random_complex(std::mt19937_64& rng, double re_lo, double re_hi, double im_lo, double im_hi) {
  std::uniform_real_distribution<double> re(re_lo, re_hi);
  std::uniform_real_distribution<double> im(im_lo, im_hi);
  return {re(rng), im(rng)};
}

/// Leibniz expansion over all 120 permutations. Independent of LU.
inline cplx leibniz_det5(const CMat5& m) {
  std::array<int, 5> perm{0, 1, 2, 3, 4};
  cplx total = 0.0;
  do {
    int inversions = 0;
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) {
        if (perm[i] > perm[j]) {
          ++inversions;
        }
      }
    }
    cplx term = (inversions % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < 5; ++i) {
      term *= m(i, perm[i]);
    }
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Classical stress-free Rayleigh function on real c in (0, c2).
inline double classical_rayleigh(double c, double c1, double c2) {
  const double x = c * c / (c2 * c2);
  return (2.0 - x) * (2.0 - x) - 4.0 * std::sqrt(1.0 - x) * std::sqrt(1.0 - c * c / (c1 * c1));
}

/// Plain bisection on the classical function; used as the root oracle.
inline double classical_rayleigh_root(double c1, double c2) {
  double lo = 0.5 * c2;
  double hi = c2 * (1.0 - 1e-12);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (classical_rayleigh(mid, c1, c2) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace rayleigh::test
