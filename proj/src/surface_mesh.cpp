#include "difem/surface_mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace difem {

long SurfaceTriangulation::euler_characteristic() const {
  std::map<std::pair<int32_t, int32_t>, int> edges;
  for (const auto& t : triangles)
    for (int e = 0; e < 3; ++e) {
      int32_t a = t[e], b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edges[{a, b}];
    }
  return static_cast<long>(vertices.size()) - static_cast<long>(edges.size()) +
         static_cast<long>(triangles.size());
}

bool SurfaceTriangulation::is_watertight() const {
  std::map<std::pair<int32_t, int32_t>, int> edges;
  for (const auto& t : triangles)
    for (int e = 0; e < 3; ++e) {
      int32_t a = t[e], b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edges[{a, b}];
    }
  for (const auto& [edge, count] : edges)
    if (count != 2) return false;
  return true;
}

double SurfaceTriangulation::total_area() const {
  double area = 0.0;
  for (const auto& t : triangles) {
    const Vec3& a = vertices[t[0]];
    const Vec3& b = vertices[t[1]];
    const Vec3& c = vertices[t[2]];
    area += 0.5 * norm(cross(b - a, c - a));
  }
  return area;
}

double SurfaceTriangulation::max_edge_length() const {
  double m = 0.0;
  for (const auto& t : triangles)
    for (int e = 0; e < 3; ++e)
      m = std::max(m, norm(vertices[t[e]] - vertices[t[(e + 1) % 3]]));
  return m;
}

SurfaceTriangulation triangulate_torus(const TorusGeometry& g, double h_s) {
  if (!(0.0 < h_s && h_s < g.r))
    throw std::invalid_argument("triangulate_torus: requires 0 < h_S < r");
  constexpr double pi = std::numbers::pi;
  // Side lengths <= h_S/sqrt(2) bound the quad diagonals by h_S. Chords are
  // shorter than arcs, so arc-based counts are conservative.
  const double target = h_s / std::sqrt(2.0);
  const int n_major = std::max(8, static_cast<int>(std::ceil(2.0 * pi * (g.R + g.r) / target)));
  const int n_minor = std::max(8, static_cast<int>(std::ceil(2.0 * pi * g.r / target)));

  SurfaceTriangulation tri;
  tri.nominal_edge_length = h_s;
  tri.vertices.reserve(static_cast<std::size_t>(n_major) * n_minor);
  for (int i = 0; i < n_major; ++i)
    for (int j = 0; j < n_minor; ++j)
      tri.vertices.push_back(g.parametric(2.0 * pi * i / n_major, 2.0 * pi * j / n_minor));

  auto vid = [&](int i, int j) {
    return static_cast<int32_t>((i % n_major) * n_minor + (j % n_minor));
  };
  tri.triangles.reserve(2u * n_major * n_minor);
  for (int i = 0; i < n_major; ++i)
    for (int j = 0; j < n_minor; ++j) {
      const int32_t v00 = vid(i, j), v10 = vid(i + 1, j);
      const int32_t v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      // split each quad along the (v00, v11) diagonal, outward orientation
      tri.triangles.push_back({v00, v10, v11});
      tri.triangles.push_back({v00, v11, v01});
    }
  return tri;
}

void write_off(const SurfaceTriangulation& tri, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_off: cannot open " + path);
  out << "OFF\n" << tri.vertices.size() << ' ' << tri.triangles.size() << " 0\n";
  char buf[96];
  for (const auto& v : tri.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x, v.y, v.z);
    out << buf;
  }
  for (const auto& t : tri.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  if (!out) throw std::runtime_error("write_off: write failed for " + path);
}

SurfaceTriangulation read_off(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_off: cannot open " + path);
  std::string header;
  in >> header;
  if (header != "OFF") throw std::runtime_error("read_off: missing OFF header in " + path);
  std::size_t nv = 0, nf = 0, ne = 0;
  in >> nv >> nf >> ne;
  SurfaceTriangulation tri;
  tri.vertices.resize(nv);
  for (auto& v : tri.vertices) in >> v.x >> v.y >> v.z;
  tri.triangles.resize(nf);
  for (auto& t : tri.triangles) {
    int n = 0;
    in >> n >> t[0] >> t[1] >> t[2];
    if (n != 3) throw std::runtime_error("read_off: non-triangle polygon in " + path);
  }
  if (!in) throw std::runtime_error("read_off: truncated file " + path);
  if (!tri.is_watertight()) throw std::runtime_error("read_off: surface is not watertight");
  return tri;
}

}  // namespace difem
