#include "difem/tet_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace difem {
namespace {

double signed_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return dot(b - a, cross(c - a, d - a)) / 6.0;
}

constexpr int kEdgePairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

}  // namespace

double TetMesh::tet_volume(int32_t t) const {
  const auto& v = tets[t].v;
  return signed_volume(vertices[v[0]], vertices[v[1]], vertices[v[2]], vertices[v[3]]);
}

double TetMesh::tet_diameter(int32_t t) const {
  const auto& v = tets[t].v;
  double m = 0.0;
  for (const auto& e : kEdgePairs)
    m = std::max(m, norm(vertices[v[e[0]]] - vertices[v[e[1]]]));
  return m;
}

Vec3 TetMesh::centroid(int32_t t) const {
  const auto& v = tets[t].v;
  return (vertices[v[0]] + vertices[v[1]] + vertices[v[2]] + vertices[v[3]]) * 0.25;
}

double TetMesh::total_volume() const {
  double vol = 0.0;
  for (int32_t t = 0; t < static_cast<int32_t>(tets.size()); ++t) vol += tet_volume(t);
  return vol;
}

bool TetMesh::all_volumes_positive() const {
  for (int32_t t = 0; t < static_cast<int32_t>(tets.size()); ++t)
    if (tet_volume(t) <= 0.0) return false;
  return true;
}

bool TetMesh::is_conforming() const {
  std::map<std::array<int32_t, 3>, int> faces;
  for (const auto& tet : tets)
    for (int k = 0; k < 4; ++k) {
      std::array<int32_t, 3> f;
      int n = 0;
      for (int i = 0; i < 4; ++i)
        if (i != k) f[n++] = tet.v[i];
      std::sort(f.begin(), f.end());
      ++faces[f];
    }
  const double tol = 1e-12;
  for (const auto& [f, count] : faces) {
    if (count == 2) continue;
    if (count != 1) return false;
    // a once-used face must lie in a box boundary plane
    bool on_boundary = false;
    for (int axis = 0; axis < 3 && !on_boundary; ++axis)
      for (double plane : {box_lo[axis], box_hi[axis]}) {
        bool all = true;
        for (int32_t vi : f)
          if (std::abs(vertices[vi][axis] - plane) > tol) all = false;
        if (all) on_boundary = true;
      }
    if (!on_boundary) return false;
  }
  return true;
}

double TetMesh::min_dihedral_angle_deg() const {
  double min_angle = 180.0;
  for (const auto& tet : tets) {
    const Vec3* p[4];
    for (int i = 0; i < 4; ++i) p[i] = &vertices[tet.v[i]];
    // inward face normals, one per opposite vertex
    Vec3 n[4];
    for (int k = 0; k < 4; ++k) {
      int a = (k + 1) % 4, b = (k + 2) % 4, c = (k + 3) % 4;
      Vec3 fn = cross(*p[b] - *p[a], *p[c] - *p[a]);
      if (dot(fn, *p[k] - *p[a]) < 0.0) fn = -fn;
      n[k] = normalized(fn);
    }
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        const double cosang = std::clamp(-dot(n[i], n[j]), -1.0, 1.0);
        min_angle = std::min(min_angle, std::acos(cosang) * 180.0 / 3.14159265358979323846);
      }
  }
  return min_angle;
}

TetMesh build_box_mesh(const Vec3& lo, const Vec3& hi, double h0) {
  TetMesh mesh;
  mesh.box_lo = lo;
  mesh.box_hi = hi;
  int n[3];
  for (int a = 0; a < 3; ++a) {
    const double edge = hi[a] - lo[a];
    const double cells = edge / h0;
    n[a] = static_cast<int>(std::lround(cells));
    if (n[a] < 1 || std::abs(cells - n[a]) > 1e-9)
      throw std::invalid_argument("build_box_mesh: h0 must divide the box edge");
  }

  const int nx = n[0] + 1, ny = n[1] + 1, nz = n[2] + 1;
  mesh.vertices.reserve(static_cast<std::size_t>(nx) * ny * nz);
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        mesh.vertices.push_back({lo.x + i * h0, lo.y + j * h0, lo.z + k * h0});

  auto vid = [&](int i, int j, int k) {
    return static_cast<int32_t>((static_cast<std::size_t>(k) * ny + j) * nx + i);
  };

  // Kuhn split: one tet per permutation of the axes, all sharing the cube
  // diagonal (corner 000 -> corner 111).
  constexpr int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  mesh.tets.reserve(static_cast<std::size_t>(n[0]) * n[1] * n[2] * 6);
  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i)
        for (const auto& perm : perms) {
          int c[3] = {i, j, k};
          TetMesh::Tet tet;
          tet.v[0] = vid(c[0], c[1], c[2]);
          c[perm[0]] += 1;
          tet.v[1] = vid(c[0], c[1], c[2]);
          c[perm[1]] += 1;
          tet.v[2] = vid(c[0], c[1], c[2]);
          c[perm[2]] += 1;
          tet.v[3] = vid(c[0], c[1], c[2]);
          if (signed_volume(mesh.vertices[tet.v[0]], mesh.vertices[tet.v[1]],
                            mesh.vertices[tet.v[2]], mesh.vertices[tet.v[3]]) < 0.0)
            std::swap(tet.v[2], tet.v[3]);
          mesh.tets.push_back(tet);
        }
  return mesh;
}

}  // namespace difem
