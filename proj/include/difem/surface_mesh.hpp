#pragma once

#include "difem/torus.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace difem {

// Watertight, consistently oriented triangle surface with torus topology.
struct SurfaceTriangulation {
  std::vector<Vec3> vertices;
  std::vector<std::array<int32_t, 3>> triangles;  // outward orientation
  double nominal_edge_length = 0.0;               // h_S

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t triangle_count() const { return triangles.size(); }

  // V - E + F; 0 for a torus.
  long euler_characteristic() const;
  // Every edge shared by exactly two triangles.
  bool is_watertight() const;
  double total_area() const;
  double max_edge_length() const;
};

// Parametric (major x minor angle) grid with diagonal-split quads, counts
// chosen so that every edge (diagonals included) is <= h_S.
SurfaceTriangulation triangulate_torus(const TorusGeometry& g, double h_s);

// ASCII OFF import/export.
void write_off(const SurfaceTriangulation& tri, const std::string& path);
SurfaceTriangulation read_off(const std::string& path);

}  // namespace difem
