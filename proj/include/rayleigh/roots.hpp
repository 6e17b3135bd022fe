#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rayleigh/material.hpp"

namespace rayleigh {

struct RootReport {
  bool found = false;
  double c_root = 0.0;    ///< first root in (0, c2), speed units
  double residual = 0.0;  ///< |f(c_root)|
  std::pair<double, double> bracket{0.0, 0.0};
  int iterations = 0;
  std::size_t sign_changes = 0;
  std::vector<double> roots;     ///< every refined root, ascending
  std::string multiplicity_note; ///< empty unless more than one candidate or a tangential one
};

struct RootOptions {
  double tol = 1e-12;
  std::size_t samples = 4096;
};

/// Real root of the full impedance secular function on the subsonic
/// interval (0, c2). Samples f at `samples` interior points, brackets every
/// sign change and bisects each one. No bracket is a legitimate outcome
/// (found = false). Throws InvalidArgument for tol ≤ 0 or fewer than 2 samples.
RootReport find_subsonic_root(double z1, double z2, const Material& mat, const RootOptions& opts = {});

struct ExistenceCell {
  double z1;
  double z2;
  RootReport report;
};

/// find_subsonic_root over the Cartesian product z1s × z2s, row-major with
/// z2 as the slow index. Per-cell failures are recorded, never raised.
std::vector<ExistenceCell> existence_map(const std::vector<double>& z1s, const std::vector<double>& z2s,
                                         const Material& mat, const RootOptions& opts = {},
                                         unsigned threads = 0);

}  // namespace rayleigh
