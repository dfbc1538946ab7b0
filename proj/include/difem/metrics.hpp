#pragma once

#include "difem/geometry_field.hpp"
#include "difem/manufactured.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace difem {

// Pointwise squared difference at a quadrature location.
using SquaredDiffFn =
    std::function<double(int32_t tet, const std::array<double, 4>& bary, const Vec3& x)>;

// E_DI of a difference field: ( int W(phi_analytic) |diff|^2 dV )^{1/2},
// band quadrature with the analytic tanh weight.
double e_di(const TetMesh& mesh, const TorusGeometry& torus, const InterfaceProfile& profile,
            const SquaredDiffFn& squared_diff);

// int W(phi_analytic) dV; converges to the surface area |T| = 4 pi^2 R r.
double well_integral(const TetMesh& mesh, const TorusGeometry& torus,
                     const InterfaceProfile& profile);

// Weighted error measures of the sampled diffuse-interface variables.
// nu_A is the (unnormalized) recovered grad rho_h; nu_B is -grad phi_h
// normalized pointwise.
double err_rho(const TetMesh& mesh, const DiscreteGeometry& geom);
double err_phi(const TetMesh& mesh, const DiscreteGeometry& geom);
double err_nu_A(const TetMesh& mesh, const DiscreteGeometry& geom);
double err_nu_B(const TetMesh& mesh, const DiscreteGeometry& geom);

// Solution errors against the manufactured extension.
double err_u(const TetMesh& mesh, const VectorField& u_h, const TorusGeometry& torus,
             const InterfaceProfile& profile);
// E_DI(U_h . nu) with the analytic normal.
double normal_component_error(const TetMesh& mesh, const VectorField& u_h,
                              const TorusGeometry& torus, const InterfaceProfile& profile);

struct ErrorReport {
  std::optional<double> rho, phi, nu_A, nu_B, u, un;
};

struct OrderFit {
  double slope = 0.0;                  // least-squares log-log slope
  std::vector<double> pair_orders;     // consecutive-pair ratios
};

// Observed convergence order of error vs scale (h or eps); requires >= 3
// points with positive values.
OrderFit observed_order(const std::vector<std::pair<double, double>>& scale_error);

}  // namespace difem
