#include "difem/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace difem {
namespace {

void check_bary(const std::array<double, 4>& bary) {
  double s = 0.0;
  for (double b : bary) s += b;
  if (std::abs(s - 1.0) > 1e-10)
    throw std::invalid_argument("barycentric coordinates must sum to 1");
}

}  // namespace

double ScalarField::eval(int32_t tet, const std::array<double, 4>& bary) const {
  check_bary(bary);
  const auto& v = mesh->tets[tet].v;
  return bary[0] * values[v[0]] + bary[1] * values[v[1]] + bary[2] * values[v[2]] +
         bary[3] * values[v[3]];
}

Vec3 VectorField::eval(int32_t tet, const std::array<double, 4>& bary) const {
  check_bary(bary);
  const auto& v = mesh->tets[tet].v;
  return values[v[0]] * bary[0] + values[v[1]] * bary[1] + values[v[2]] * bary[2] +
         values[v[3]] * bary[3];
}

std::array<Vec3, 4> shape_gradients(const TetMesh& mesh, int32_t tet) {
  const auto& v = mesh.tets[tet].v;
  const Vec3& p0 = mesh.vertices[v[0]];
  const Vec3 d1 = mesh.vertices[v[1]] - p0;
  const Vec3 d2 = mesh.vertices[v[2]] - p0;
  const Vec3 d3 = mesh.vertices[v[3]] - p0;
  const double vol6 = dot(d1, cross(d2, d3));
  if (vol6 <= 0.0) throw std::runtime_error("shape_gradients: degenerate or inverted tet");
  std::array<Vec3, 4> g;
  g[1] = cross(d2, d3) / vol6;
  g[2] = cross(d3, d1) / vol6;
  g[3] = cross(d1, d2) / vol6;
  g[0] = -(g[1] + g[2] + g[3]);
  return g;
}

Vec3 tet_point(const TetMesh& mesh, int32_t tet, const std::array<double, 4>& bary) {
  const auto& v = mesh.tets[tet].v;
  return mesh.vertices[v[0]] * bary[0] + mesh.vertices[v[1]] * bary[1] +
         mesh.vertices[v[2]] * bary[2] + mesh.vertices[v[3]] * bary[3];
}

Vec3 ScalarField::element_gradient(int32_t tet) const {
  const auto g = shape_gradients(*mesh, tet);
  const auto& v = mesh->tets[tet].v;
  return g[0] * values[v[0]] + g[1] * values[v[1]] + g[2] * values[v[2]] + g[3] * values[v[3]];
}

VectorField recover_nodal_gradient(const ScalarField& f) {
  const TetMesh& mesh = *f.mesh;
  VectorField out(mesh);
  std::vector<double> weight(mesh.vertex_count(), 0.0);
  for (int32_t t = 0; t < static_cast<int32_t>(mesh.tets.size()); ++t) {
    const double vol = mesh.tet_volume(t);
    const Vec3 g = f.element_gradient(t);
    for (int32_t v : mesh.tets[t].v) {
      out.values[v] += g * vol;
      weight[v] += vol;
    }
  }
  for (std::size_t v = 0; v < weight.size(); ++v)
    if (weight[v] > 0.0) out.values[v] *= 1.0 / weight[v];
  return out;
}

NodalGeometryFields sample_nodal_fields(const SignedDistanceFn& sdf, const TetMesh& mesh,
                                        const InterfaceProfile& profile) {
  NodalGeometryFields fields{ScalarField(mesh), ScalarField(mesh)};
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
    const double rho = sdf(mesh.vertices[v]);
    fields.rho.values[v] = rho;
    fields.phi.values[v] = profile.phase_field(rho);
  }
  return fields;
}

}  // namespace difem
