#pragma once

#include "difem/vec3.hpp"

#include <stdexcept>

namespace difem {

// Thrown when a geometric quantity is requested on the medial axis of the
// torus (the rotation axis or the center circle s = R, z = 0), where normals
// and closest points are undefined.
struct MedialAxisError : std::domain_error {
  using std::domain_error::domain_error;
};

// Analytic torus surface: tube of radius r around a circle of radius R in
// the z = 0 plane.
struct TorusGeometry {
  double R = 1.0;  // major radius
  double r = 0.5;  // minor radius

  TorusGeometry(double major, double minor) : R(major), r(minor) {
    if (!(0.0 < minor && minor < major))
      throw std::invalid_argument("TorusGeometry: requires 0 < r < R");
  }
  TorusGeometry() = default;

  double curvature_bound() const { return std::max(1.0 / r, 1.0 / (R - r)); }

  // rho(x) = sqrt((sqrt(x^2+y^2) - R)^2 + z^2) - r; negative inside the tube.
  double signed_distance(const Vec3& x) const;

  // Unit outward normal, equal to grad rho; constant along normal lines.
  Vec3 normal(const Vec3& x) const;

  // pi(x) = x - rho * normal(x); lands on the surface.
  Vec3 closest_point(const Vec3& x) const;

  // B = -Pi grad(normal), by central differences of the analytic normal
  // (step 1e-5 * r). Diagnostic only; the discrete forms use B_h = 0.
  Mat3 shape_operator(const Vec3& x) const;

  // Parametric point: phi around the main circle, theta around the tube.
  Vec3 parametric(double phi, double theta) const;

  // True when x is within `tol` of the medial axis.
  bool near_medial_axis(const Vec3& x, double tol = 1e-12) const;
};

}  // namespace difem
