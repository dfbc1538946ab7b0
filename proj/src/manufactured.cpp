#include "difem/manufactured.hpp"

namespace difem {

Mat3 ManufacturedSolution::extended_gradient_step(const Vec3& x, double step) const {
  const Vec3 y = torus.closest_point(x);
  Mat3 jac;  // jac(i,j) = d U_i / d x_j at y
  for (int j = 0; j < 3; ++j) {
    Vec3 yp = y, ym = y;
    yp[j] += step;
    ym[j] -= step;
    const Vec3 up = extension(yp);
    const Vec3 um = extension(ym);
    for (int i = 0; i < 3; ++i) jac(i, j) = (up[i] - um[i]) / (2.0 * step);
  }
  const Mat3 pi = projector(torus.normal(y));
  return pi * jac * pi;
}

}  // namespace difem
