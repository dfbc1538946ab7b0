#pragma once

#include "difem/torus.hpp"

#include <stdexcept>

namespace difem {

// tanh profile of the diffuse interface and the double-well surface-delta
// weight. phi = 1/2 (1 - tanh(3 rho / eps)), W(phi) = 36/eps (1-phi)^2 phi^2;
// the normal-line integral of W over the profile is exactly 1.
struct InterfaceProfile {
  double epsilon = 0.1;

  InterfaceProfile() = default;
  explicit InterfaceProfile(double eps) : epsilon(eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("InterfaceProfile: epsilon must be positive");
  }

  // Validity of the closest-point extension requires eps * kappa_max < 1.
  void validate_for(const TorusGeometry& g) const {
    if (!(epsilon * g.curvature_bound() < 1.0))
      throw std::invalid_argument("InterfaceProfile: epsilon * kappa_max must be < 1");
  }

  double phase_field(double rho) const { return 0.5 * (1.0 - std::tanh(3.0 * rho / epsilon)); }

  double well_potential(double phi) const {
    const double q = (1.0 - phi) * phi;
    return 36.0 / epsilon * q * q;
  }

  double well_of_rho(double rho) const { return well_potential(phase_field(rho)); }

  // Half-width of the band phi in [band_lo, 1-band_lo]: |rho| <= atanh(1-2*band_lo)*eps/3.
  double band_halfwidth(double band_lo = 0.05) const {
    return std::atanh(1.0 - 2.0 * band_lo) * epsilon / 3.0;
  }
};

}  // namespace difem
