#include "difem/bvh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace difem {
namespace {

int64_t edge_key(int32_t a, int32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<int64_t>(a) << 32) | static_cast<uint32_t>(b);
}

double clamp01(double t) { return t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t); }

}  // namespace

TriangleBvh::TriangleBvh(const SurfaceTriangulation& tri)
    : tris_(tri.triangles), verts_(tri.vertices) {
  if (tris_.empty()) throw std::invalid_argument("TriangleBvh: empty triangulation");

  face_normals_.resize(tris_.size());
  vertex_normals_.assign(verts_.size(), Vec3{});
  std::vector<std::pair<int64_t, Vec3>> edges;
  edges.reserve(3 * tris_.size());
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    const auto& f = tris_[t];
    const Vec3 &a = verts_[f[0]], &b = verts_[f[1]], &c = verts_[f[2]];
    const Vec3 n = normalized(cross(b - a, c - a));
    face_normals_[t] = n;
    for (int k = 0; k < 3; ++k) {
      const Vec3& p = verts_[f[k]];
      const Vec3 e1 = normalized(verts_[f[(k + 1) % 3]] - p);
      const Vec3 e2 = normalized(verts_[f[(k + 2) % 3]] - p);
      const double angle = std::acos(std::clamp(dot(e1, e2), -1.0, 1.0));
      vertex_normals_[f[k]] += angle * n;
      edges.emplace_back(edge_key(f[k], f[(k + 1) % 3]), n);
    }
  }
  for (auto& v : vertex_normals_) v = normalized(v);

  std::sort(edges.begin(), edges.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  edge_normals_.reserve(edges.size() / 2);
  for (std::size_t i = 0; i < edges.size();) {
    Vec3 sum = edges[i].second;
    std::size_t j = i + 1;
    while (j < edges.size() && edges[j].first == edges[i].first) sum += edges[j++].second;
    edge_normals_.emplace_back(edges[i].first, normalized(sum));
    i = j;
  }

  std::vector<int32_t> ids(tris_.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int32_t>(i);
  nodes_.reserve(2 * tris_.size());
  order_.reserve(tris_.size());
  build(ids, 0, static_cast<int32_t>(ids.size()));
}

int32_t TriangleBvh::build(std::vector<int32_t>& ids, int32_t begin, int32_t end) {
  const int32_t me = static_cast<int32_t>(nodes_.size());
  nodes_.emplace_back();
  Aabb box;
  Aabb cbox;  // centroid bounds for the split axis
  for (int32_t i = begin; i < end; ++i) {
    const auto& f = tris_[ids[i]];
    Vec3 cen{};
    for (int k = 0; k < 3; ++k) {
      box.grow(verts_[f[k]]);
      cen += verts_[f[k]];
    }
    cbox.grow(cen / 3.0);
  }
  nodes_[me].box = box;

  constexpr int32_t leaf_size = 4;
  if (end - begin <= leaf_size) {
    nodes_[me].first = static_cast<int32_t>(order_.size());
    nodes_[me].count = end - begin;
    for (int32_t i = begin; i < end; ++i) order_.push_back(ids[i]);
    return me;
  }

  int axis = 0;
  const Vec3 extent = cbox.hi - cbox.lo;
  if (extent.y > extent.x) axis = 1;
  if (extent.z > extent[axis]) axis = 2;
  const int32_t mid = begin + (end - begin) / 2;
  std::nth_element(ids.begin() + begin, ids.begin() + mid, ids.begin() + end,
                   [&](int32_t a, int32_t b) {
                     double ca = 0.0, cb = 0.0;
                     for (int k = 0; k < 3; ++k) {
                       ca += verts_[tris_[a][k]][axis];
                       cb += verts_[tris_[b][k]][axis];
                     }
                     return ca < cb;
                   });
  const int32_t left = build(ids, begin, mid);
  const int32_t right = build(ids, mid, end);
  nodes_[me].left = left;
  nodes_[me].right = right;
  return me;
}

NearestHit TriangleBvh::closest_on_triangle(const Vec3& p, int32_t t) const {
  // Ericson, Real-Time Collision Detection, 5.1.5, with feature tags.
  const auto& f = tris_[t];
  const Vec3 &a = verts_[f[0]], &b = verts_[f[1]], &c = verts_[f[2]];
  NearestHit hit;
  hit.triangle = t;

  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = dot(ab, ap), d2 = dot(ac, ap);
  if (d1 <= 0.0 && d2 <= 0.0) { hit.point = a; hit.feature = 0; }
  else {
    const Vec3 bp = p - b;
    const double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) { hit.point = b; hit.feature = 1; }
    else {
      const double vc = d1 * d4 - d3 * d2;
      if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        hit.point = a + ab * clamp01(d1 / (d1 - d3));
        hit.feature = 3;  // edge ab
      } else {
        const Vec3 cp = p - c;
        const double d5 = dot(ab, cp), d6 = dot(ac, cp);
        if (d6 >= 0.0 && d5 <= d6) { hit.point = c; hit.feature = 2; }
        else {
          const double vb = d5 * d2 - d1 * d6;
          if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
            hit.point = a + ac * clamp01(d2 / (d2 - d6));
            hit.feature = 5;  // edge ca
          } else {
            const double va = d3 * d6 - d5 * d4;
            if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
              hit.point = b + (c - b) * clamp01((d4 - d3) / ((d4 - d3) + (d5 - d6)));
              hit.feature = 4;  // edge bc
            } else {
              const double denom = 1.0 / (va + vb + vc);
              hit.point = a + ab * (vb * denom) + ac * (vc * denom);
              hit.feature = 6;  // interior
            }
          }
        }
      }
    }
  }
  hit.distance2 = norm2(p - hit.point);
  return hit;
}

void TriangleBvh::search(int32_t node, const Vec3& p, NearestHit& best) const {
  const Node& n = nodes_[node];
  if (n.left < 0) {
    for (int32_t i = n.first; i < n.first + n.count; ++i) {
      NearestHit h = closest_on_triangle(p, order_[i]);
      if (h.distance2 < best.distance2) best = h;
    }
    return;
  }
  double dl = nodes_[n.left].box.distance2(p);
  double dr = nodes_[n.right].box.distance2(p);
  int32_t first = n.left, second = n.right;
  if (dr < dl) {
    std::swap(first, second);
    std::swap(dl, dr);
  }
  if (dl < best.distance2) search(first, p, best);
  if (dr < best.distance2) search(second, p, best);
}

NearestHit TriangleBvh::nearest(const Vec3& p) const {
  NearestHit best;
  search(0, p, best);
  return best;
}

NearestHit TriangleBvh::nearest_linear_scan(const Vec3& p) const {
  NearestHit best;
  for (int32_t t = 0; t < static_cast<int32_t>(tris_.size()); ++t) {
    NearestHit h = closest_on_triangle(p, t);
    if (h.distance2 < best.distance2) best = h;
  }
  return best;
}

Vec3 TriangleBvh::pseudonormal(const NearestHit& hit) const {
  const auto& f = tris_[hit.triangle];
  switch (hit.feature) {
    case 0: case 1: case 2:
      return vertex_normals_[f[hit.feature]];
    case 3: case 4: case 5: {
      const int k = hit.feature - 3;
      const int64_t key = edge_key(f[k], f[(k + 1) % 3]);
      auto it = std::lower_bound(edge_normals_.begin(), edge_normals_.end(), key,
                                 [](const auto& e, int64_t k2) { return e.first < k2; });
      return it->second;
    }
    default:
      return face_normals_[hit.triangle];
  }
}

double TriangleBvh::signed_distance(const Vec3& p) const {
  const NearestHit hit = nearest(p);
  const double d = std::sqrt(hit.distance2);
  if (d == 0.0) return 0.0;
  const double s = dot(p - hit.point, pseudonormal(hit));
  if (s == 0.0) {
    // measure-zero tie; resolve deterministically
    std::fprintf(stderr, "difem: ambiguous sign at (%g, %g, %g), taking positive\n",
                 p.x, p.y, p.z);
    return d;
  }
  return s > 0.0 ? d : -d;
}

int TriangleBvh::height() const {
  std::vector<std::pair<int32_t, int>> stack{{0, 1}};
  int h = 0;
  while (!stack.empty()) {
    auto [n, depth] = stack.back();
    stack.pop_back();
    h = std::max(h, depth);
    if (nodes_[n].left >= 0) {
      stack.emplace_back(nodes_[n].left, depth + 1);
      stack.emplace_back(nodes_[n].right, depth + 1);
    }
  }
  return h;
}

bool TriangleBvh::box_invariant_holds() const {
  std::vector<char> seen(tris_.size(), 0);
  for (int32_t t : order_) {
    if (seen[t]) return false;  // triangle in more than one leaf
    seen[t] = 1;
  }
  for (char s : seen)
    if (!s) return false;
  for (const Node& n : nodes_) {
    if (n.left >= 0) {
      if (!n.box.contains(nodes_[n.left].box) || !n.box.contains(nodes_[n.right].box))
        return false;
    } else {
      for (int32_t i = n.first; i < n.first + n.count; ++i)
        for (int k = 0; k < 3; ++k) {
          Aabb pt;
          pt.grow(verts_[tris_[order_[i]][k]]);
          if (!n.box.contains(pt)) return false;
        }
    }
  }
  return true;
}

}  // namespace difem
