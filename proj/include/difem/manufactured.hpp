#pragma once

#include "difem/torus.hpp"

namespace difem {

// Benchmark data: the solenoidal tangential field u = nu x grad_S(x^2 y - 5 z^3)
// on the torus, its constant-normal extension U = u o pi, and the extended
// covariant gradient ext[grad u] used by the right-hand side.
struct ManufacturedSolution {
  TorusGeometry torus;

  explicit ManufacturedSolution(const TorusGeometry& g) : torus(g) {}

  // grad psi for psi = x^2 y - 5 z^3.
  static Vec3 grad_psi(const Vec3& p) {
    return {2.0 * p.x * p.y, p.x * p.x, -15.0 * p.z * p.z};
  }

  // u at a surface point y (|rho(y)| must be ~0): nu x (Pi grad psi) = nu x grad psi.
  Vec3 surface_value(const Vec3& y) const {
    return cross(torus.normal(y), grad_psi(y));
  }

  // U(x) = u(pi(x)); constant along normal lines.
  Vec3 extension(const Vec3& x) const { return surface_value(torus.closest_point(x)); }

  // ext[grad u](x) = Pi(y) J_U(y) Pi(y) at y = pi(x), J_U by central
  // differences with step fd_step(); the shape-operator term vanishes since
  // U.nu = 0 on the surface.
  Mat3 extended_gradient(const Vec3& x) const { return extended_gradient_step(x, fd_step()); }

  // Same with an explicit step; used by the Richardson consistency oracle.
  Mat3 extended_gradient_step(const Vec3& x, double step) const;

  double fd_step() const { return 1e-5 * torus.r; }
};

}  // namespace difem
