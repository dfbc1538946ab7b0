#pragma once

#include "difem/profile.hpp"
#include "difem/refine.hpp"
#include "difem/tet_mesh.hpp"

#include <array>
#include <vector>

namespace difem {

// Nodal linear-Lagrange coefficients over a TetMesh. Fields hold a pointer
// to their mesh; the mesh must outlive the field.
struct ScalarField {
  const TetMesh* mesh = nullptr;
  std::vector<double> values;

  explicit ScalarField(const TetMesh& m) : mesh(&m), values(m.vertex_count(), 0.0) {}

  double eval(int32_t tet, const std::array<double, 4>& bary) const;
  Vec3 element_gradient(int32_t tet) const;
};

struct VectorField {
  const TetMesh* mesh = nullptr;
  std::vector<Vec3> values;

  explicit VectorField(const TetMesh& m) : mesh(&m), values(m.vertex_count(), Vec3{}) {}

  Vec3 eval(int32_t tet, const std::array<double, 4>& bary) const;
};

// Gradients of the four barycentric shape functions on a tet.
std::array<Vec3, 4> shape_gradients(const TetMesh& mesh, int32_t tet);

// Physical point of a barycentric location.
Vec3 tet_point(const TetMesh& mesh, int32_t tet, const std::array<double, 4>& bary);

// Volume-weighted average of element gradients over the patch of each vertex;
// superconvergent on structured meshes.
VectorField recover_nodal_gradient(const ScalarField& f);

// Nodal sampling of a signed-distance source; phi nodes are the tanh profile
// of the sampled rho.
struct NodalGeometryFields {
  ScalarField rho;
  ScalarField phi;
};
NodalGeometryFields sample_nodal_fields(const SignedDistanceFn& sdf, const TetMesh& mesh,
                                        const InterfaceProfile& profile);

}  // namespace difem
