#include "rayleigh/linalg.hpp"

#include <Eigen/LU>

namespace rayleigh {

cplx determinant(const CMat5& m) { return m.partialPivLu().determinant(); }

std::array<double, 2> hermitian2_eigenvalues(const CMat2& h) {
  const double a = h(0, 0).real();
  const double b = h(1, 1).real();
  const cplx off = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
  const double mean = 0.5 * (a + b);
  const double rad = std::hypot(0.5 * (a - b), std::abs(off));
  return {mean - rad, mean + rad};
}

}  // namespace rayleigh
