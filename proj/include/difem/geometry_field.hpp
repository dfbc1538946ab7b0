#pragma once

#include "difem/fields.hpp"
#include "difem/manufactured.hpp"
#include "difem/profile.hpp"
#include "difem/torus.hpp"

#include <memory>
#include <optional>

namespace difem {

enum class VariableSource { analytic, sampled };
// How phi (and W) are evaluated at quadrature points when variables are
// sampled: tanh profile of the interpolated rho_h, or the interpolated
// nodal phi_h field.
enum class PhiEvaluation { profile_of_rho, nodal };
enum class NormalSource { analytic, grad_rho, grad_phi };

// Geometry data of the diffuse interface at evaluation points: rho, the
// double-well weight, and the unit normal (Pi follows pointwise as I - nu nu^T).
struct DiscreteGeometry {
  const TorusGeometry* torus = nullptr;
  InterfaceProfile profile;
  VariableSource var_source = VariableSource::analytic;
  PhiEvaluation phi_eval = PhiEvaluation::profile_of_rho;
  NormalSource normal_source = NormalSource::analytic;
  bool recovered_gradients = true;  // false: raw per-element gradients

  // present when var_source == sampled
  std::optional<ScalarField> rho_h;
  std::optional<ScalarField> phi_h;
  // recovered gradient fields (A: grad rho_h, B: grad phi_h)
  std::optional<VectorField> grad_rho_rec;
  std::optional<VectorField> grad_phi_rec;
  // nodewise-normalized normals for the active discrete method
  std::optional<VectorField> nu_nodal;

  double rho_at(int32_t tet, const std::array<double, 4>& bary, const Vec3& x) const;
  double well_at(int32_t tet, const std::array<double, 4>& bary, const Vec3& x) const;
  // Unit within 1e-12; throws when the normal is undefined at the point
  // (far-field gradient collapse), which the band weight cutoff must prevent.
  Vec3 normal_at(int32_t tet, const std::array<double, 4>& bary, const Vec3& x) const;

  // Conservative per-tet band test from vertex rho values; selects the
  // quadrature degree.
  bool tet_touches_band(int32_t tet, const TetMesh& mesh, double halfwidth) const;
};

DiscreteGeometry make_analytic_geometry(const TorusGeometry& torus,
                                        const InterfaceProfile& profile);

DiscreteGeometry make_sampled_geometry(const TetMesh& mesh, const TorusGeometry& torus,
                                       const InterfaceProfile& profile,
                                       const SignedDistanceFn& sdf, NormalSource normal_source,
                                       PhiEvaluation phi_eval = PhiEvaluation::profile_of_rho,
                                       bool recovered_gradients = true);

}  // namespace difem
