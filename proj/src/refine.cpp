#include "difem/refine.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace difem {
namespace {

constexpr int kEdgePairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

struct Edge {
  int32_t a, b;  // a < b
  bool operator==(const Edge& o) const { return a == o.a && b == o.b; }
};

Edge make_edge(int32_t x, int32_t y) { return x < y ? Edge{x, y} : Edge{y, x}; }

// Total order used for longest-edge selection: by length, ties by the
// smaller sorted index pair.
struct EdgeRank {
  double len2;
  Edge e;
  bool operator<(const EdgeRank& o) const {
    if (len2 != o.len2) return len2 < o.len2;
    if (e.a != o.e.a) return e.a > o.e.a;
    return e.b > o.e.b;
  }
};

class Refiner {
 public:
  Refiner(TetMesh& mesh, const RefinementBand& band) : mesh_(mesh), band_(band) {
    vertex_rho_.resize(mesh_.vertices.size());
    for (std::size_t i = 0; i < mesh_.vertices.size(); ++i)
      vertex_rho_[i] = band_.sdf(mesh_.vertices[i]);
    incidence_.resize(mesh_.vertices.size());
    alive_.assign(mesh_.tets.size(), 1);
    for (int32_t t = 0; t < static_cast<int32_t>(mesh_.tets.size()); ++t)
      for (int32_t v : mesh_.tets[t].v) incidence_[v].push_back(t);
  }

  void run() {
    const double limit = std::sqrt(3.0) * band_.target_h * (1.0 + 1e-10);
    // children are appended, so a single growing pass visits them too
    for (int32_t t = 0; t < static_cast<int32_t>(mesh_.tets.size()); ++t) {
      if (!alive_[t]) continue;
      if (mesh_.tet_diameter(t) <= limit) continue;
      if (!in_band(t)) continue;
      refine_lepp(longest_edge(t));
    }
    compact();
  }

 private:
  EdgeRank longest_edge(int32_t t) const {
    const auto& v = mesh_.tets[t].v;
    EdgeRank best{-1.0, {0, 0}};
    for (const auto& p : kEdgePairs) {
      const Edge e = make_edge(v[p[0]], v[p[1]]);
      const EdgeRank r{norm2(mesh_.vertices[e.a] - mesh_.vertices[e.b]), e};
      if (best < r) best = r;
    }
    return best;
  }

  bool in_band(int32_t t) const {
    const auto& v = mesh_.tets[t].v;
    double lo = vertex_rho_[v[0]], hi = lo;
    for (int k = 1; k < 4; ++k) {
      lo = std::min(lo, vertex_rho_[v[k]]);
      hi = std::max(hi, vertex_rho_[v[k]]);
    }
    const double rc = band_.sdf(mesh_.centroid(t));
    lo = std::min(lo, rc);
    hi = std::max(hi, rc);
    const double w = band_.halfwidth();
    return lo <= w && hi >= -w;
  }

  void tets_on_edge(const Edge& e, std::vector<int32_t>& out) const {
    out.clear();
    for (int32_t t : incidence_[e.a]) {
      if (!alive_[t]) continue;
      const auto& v = mesh_.tets[t].v;
      if (v[0] == e.b || v[1] == e.b || v[2] == e.b || v[3] == e.b) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
  }

  // Rivara: before splitting an edge, recursively split any incident tet
  // whose longest edge is a different (strictly larger-ranked) edge.
  void refine_lepp(const EdgeRank& seed) {
    std::vector<EdgeRank> stack{seed};
    std::vector<int32_t> incident;
    while (!stack.empty()) {
      const EdgeRank cur = stack.back();
      tets_on_edge(cur.e, incident);
      if (incident.empty()) {  // already split by a deeper propagation step
        stack.pop_back();
        continue;
      }
      bool blocked = false;
      for (int32_t t : incident) {
        const EdgeRank le = longest_edge(t);
        if (!(le.e == cur.e)) {
          stack.push_back(le);
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      split_edge(cur.e, incident);
      stack.pop_back();
    }
  }

  void split_edge(const Edge& e, const std::vector<int32_t>& incident) {
    const int32_t m = static_cast<int32_t>(mesh_.vertices.size());
    const Vec3 mid = (mesh_.vertices[e.a] + mesh_.vertices[e.b]) * 0.5;
    mesh_.vertices.push_back(mid);
    vertex_rho_.push_back(band_.sdf(mid));
    incidence_.emplace_back();

    for (int32_t t : incident) {
      const TetMesh::Tet parent = mesh_.tets[t];
      if (parent.level + 1 > band_.max_level)
        throw RefinementExhausted("refine_to_band: refinement budget exceeded (max level " +
                                  std::to_string(band_.max_level) + ")");
      kill(t);
      TetMesh::Tet c1 = parent, c2 = parent;
      c1.level = c2.level = parent.level + 1;
      for (int k = 0; k < 4; ++k) {
        if (c1.v[k] == e.a) c1.v[k] = m;  // child keeping b
        if (c2.v[k] == e.b) c2.v[k] = m;  // child keeping a
      }
      spawn(c1);
      spawn(c2);
    }
  }

  void kill(int32_t t) {
    alive_[t] = 0;
    for (int32_t v : mesh_.tets[t].v) {
      auto& list = incidence_[v];
      list.erase(std::remove(list.begin(), list.end(), t), list.end());
    }
  }

  void spawn(const TetMesh::Tet& tet) {
    const int32_t id = static_cast<int32_t>(mesh_.tets.size());
    mesh_.tets.push_back(tet);
    alive_.push_back(1);
    for (int32_t v : tet.v) incidence_[v].push_back(id);
  }

  void compact() {
    std::size_t out = 0;
    for (std::size_t t = 0; t < mesh_.tets.size(); ++t)
      if (alive_[t]) mesh_.tets[out++] = mesh_.tets[t];
    mesh_.tets.resize(out);
  }

  TetMesh& mesh_;
  const RefinementBand& band_;
  std::vector<double> vertex_rho_;
  std::vector<std::vector<int32_t>> incidence_;
  std::vector<char> alive_;
};

}  // namespace

void refine_to_band(TetMesh& mesh, const RefinementBand& band) {
  Refiner(mesh, band).run();
}

bool tet_in_band(const TetMesh& mesh, int32_t t, const RefinementBand& band) {
  const auto& v = mesh.tets[t].v;
  double lo = band.sdf(mesh.vertices[v[0]]), hi = lo;
  for (int k = 1; k < 4; ++k) {
    const double rho = band.sdf(mesh.vertices[v[k]]);
    lo = std::min(lo, rho);
    hi = std::max(hi, rho);
  }
  const double rc = band.sdf(mesh.centroid(t));
  lo = std::min(lo, rc);
  hi = std::max(hi, rc);
  const double w = band.halfwidth();
  return lo <= w && hi >= -w;
}

MeshStatistics mesh_statistics(const TetMesh& mesh, const RefinementBand& band) {
  MeshStatistics st;
  st.vertex_count = mesh.vertex_count();
  st.tet_count = mesh.tet_count();
  double sum = 0.0;
  st.band_h_min = 1e30;
  for (int32_t t = 0; t < static_cast<int32_t>(mesh.tets.size()); ++t) {
    if (!tet_in_band(mesh, t, band)) continue;
    const double d = mesh.tet_diameter(t);
    ++st.band_tet_count;
    sum += d;
    st.band_h_min = std::min(st.band_h_min, d);
    st.band_h_max = std::max(st.band_h_max, d);
  }
  if (st.band_tet_count > 0) {
    st.band_h_mean = sum / static_cast<double>(st.band_tet_count);
    const double eps_width = 2.0 * std::atanh(0.9) * band.profile.epsilon / 3.0;
    const double mean_spacing = st.band_h_mean / std::sqrt(3.0);
    st.points_across_interface = eps_width / mean_spacing;
  } else {
    st.band_h_min = 0.0;
  }
  return st;
}

}  // namespace difem
