#pragma once

#include "difem/surface_mesh.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace difem {

struct Aabb {
  Vec3 lo{1e30, 1e30, 1e30};
  Vec3 hi{-1e30, -1e30, -1e30};

  void grow(const Vec3& p) {
    for (int i = 0; i < 3; ++i) {
      if (p[i] < lo[i]) lo[i] = p[i];
      if (p[i] > hi[i]) hi[i] = p[i];
    }
  }
  void grow(const Aabb& b) {
    grow(b.lo);
    grow(b.hi);
  }
  bool contains(const Aabb& b, double tol = 1e-12) const {
    for (int i = 0; i < 3; ++i)
      if (b.lo[i] < lo[i] - tol || b.hi[i] > hi[i] + tol) return false;
    return true;
  }
  double distance2(const Vec3& p) const {
    double d2 = 0.0;
    for (int i = 0; i < 3; ++i) {
      double d = 0.0;
      if (p[i] < lo[i]) d = lo[i] - p[i];
      else if (p[i] > hi[i]) d = p[i] - hi[i];
      d2 += d * d;
    }
    return d2;
  }
};

struct NearestHit {
  double distance2 = std::numeric_limits<double>::infinity();
  int32_t triangle = -1;
  Vec3 point;      // closest point on the surface
  int feature = 0; // 0..2 vertex, 3..5 edge opposite-style (01,12,20), 6 face
};

// Static AABB tree over a watertight triangulation, with angle-weighted
// pseudonormals for inside/outside classification (Baerentzen-Aanaes).
class TriangleBvh {
 public:
  explicit TriangleBvh(const SurfaceTriangulation& tri);

  NearestHit nearest(const Vec3& p) const;
  NearestHit nearest_linear_scan(const Vec3& p) const;  // oracle path

  // Exact distance to the polyhedron; negative inside.
  double signed_distance(const Vec3& p) const;

  int height() const;
  std::size_t triangle_count() const { return tris_.size(); }
  const Aabb& root_box() const { return nodes_[0].box; }
  bool box_invariant_holds() const;

 private:
  struct Node {
    Aabb box;
    int32_t left = -1;   // child index, or -1 for leaf
    int32_t right = -1;
    int32_t first = 0;   // leaf triangle range in order_
    int32_t count = 0;
  };

  int32_t build(std::vector<int32_t>& ids, int32_t begin, int32_t end);
  void search(int32_t node, const Vec3& p, NearestHit& best) const;
  NearestHit closest_on_triangle(const Vec3& p, int32_t t) const;
  Vec3 pseudonormal(const NearestHit& hit) const;

  std::vector<std::array<int32_t, 3>> tris_;
  std::vector<Vec3> verts_;
  std::vector<Vec3> face_normals_;
  std::vector<Vec3> vertex_normals_;                 // angle-weighted
  std::vector<std::pair<int64_t, Vec3>> edge_normals_;  // sorted by packed edge key
  std::vector<Node> nodes_;
  std::vector<int32_t> order_;
};

}  // namespace difem
