#pragma once

#include "difem/vec3.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace difem {

// Conforming tetrahedral mesh of an axis-aligned box.
struct TetMesh {
  struct Tet {
    std::array<int32_t, 4> v;
    int32_t level = 0;  // number of bisections from the base mesh
  };

  Vec3 box_lo{-2, -2, -2};
  Vec3 box_hi{2, 2, 2};
  std::vector<Vec3> vertices;
  std::vector<Tet> tets;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t tet_count() const { return tets.size(); }

  double tet_volume(int32_t t) const;
  double tet_diameter(int32_t t) const;  // longest edge
  Vec3 centroid(int32_t t) const;
  double total_volume() const;

  // Every interior face shared by exactly two tets; faces used once lie on
  // the box boundary. Exact combinatorial audit.
  bool is_conforming() const;
  bool all_volumes_positive() const;
  double min_dihedral_angle_deg() const;
};

// Structured cube grid with the 6-tet Kuhn split; h0 must divide the edge.
TetMesh build_box_mesh(const Vec3& lo, const Vec3& hi, double h0);

}  // namespace difem
