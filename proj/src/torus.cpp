#include "difem/torus.hpp"

namespace difem {

double TorusGeometry::signed_distance(const Vec3& x) const {
  const double s = std::sqrt(x.x * x.x + x.y * x.y);
  const double d = s - R;
  return std::sqrt(d * d + x.z * x.z) - r;
}

bool TorusGeometry::near_medial_axis(const Vec3& x, double tol) const {
  const double s = std::sqrt(x.x * x.x + x.y * x.y);
  if (s <= tol) return true;  // rotation axis
  const double d = s - R;
  return std::sqrt(d * d + x.z * x.z) <= tol;  // center circle of the tube
}

Vec3 TorusGeometry::normal(const Vec3& x) const {
  const double s = std::sqrt(x.x * x.x + x.y * x.y);
  if (s <= 1e-12) throw MedialAxisError("normal undefined on the rotation axis");
  const double d = s - R;
  const double q = std::sqrt(d * d + x.z * x.z);
  if (q <= 1e-12) throw MedialAxisError("normal undefined on the tube center circle");
  // grad rho = (d/q * x/s, d/q * y/s, z/q)
  const double f = d / (q * s);
  return {f * x.x, f * x.y, x.z / q};
}

Vec3 TorusGeometry::closest_point(const Vec3& x) const {
  const double rho = signed_distance(x);
  return x - rho * normal(x);
}

Mat3 TorusGeometry::shape_operator(const Vec3& x) const {
  const Vec3 nu = normal(x);
  const double h = 1e-5 * r;
  Mat3 grad_nu;  // grad_nu(i,j) = d nu_i / d x_j
  for (int j = 0; j < 3; ++j) {
    Vec3 xp = x, xm = x;
    xp[j] += h;
    xm[j] -= h;
    const Vec3 np = normal(xp);
    const Vec3 nm = normal(xm);
    for (int i = 0; i < 3; ++i) grad_nu(i, j) = (np[i] - nm[i]) / (2.0 * h);
  }
  return projector(nu) * grad_nu * (-1.0);
}

Vec3 TorusGeometry::parametric(double phi, double theta) const {
  const double s = R + r * std::cos(theta);
  return {s * std::cos(phi), s * std::sin(phi), r * std::sin(theta)};
}

Mat3 projector(const Vec3& nu) {
  if (std::abs(norm(nu) - 1.0) > 1e-12)
    throw std::invalid_argument("projector: input normal is not unit length");
  return Mat3::identity() - Mat3::outer(nu, nu);
}

}  // namespace difem
