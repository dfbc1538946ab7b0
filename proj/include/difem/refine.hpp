#pragma once

#include "difem/profile.hpp"
#include "difem/tet_mesh.hpp"

#include <functional>
#include <stdexcept>

namespace difem {

using SignedDistanceFn = std::function<double(const Vec3&)>;

// Predicate data for interface-band refinement. A tet belongs to the band
// when its vertex/centroid rho interval overlaps |rho| <= band halfwidth
// (the phi in [band_lo, band_hi] shell).
struct RefinementBand {
  InterfaceProfile profile;
  SignedDistanceFn sdf;
  double band_lo = 0.05;
  double band_hi = 0.95;
  double target_h = 0.0;   // structured spacing in the band
  int max_level = 64;      // refinement budget; exceeding it is an error

  RefinementBand(const InterfaceProfile& p, SignedDistanceFn f, double h)
      : profile(p), sdf(std::move(f)), target_h(h) {
    if (!(band_lo > 0.0 && band_hi < 1.0 && band_lo < band_hi))
      throw std::invalid_argument("RefinementBand: band bounds must be strictly inside (0,1)");
    if (!(target_h > 0.0)) throw std::invalid_argument("RefinementBand: target h must be positive");
  }

  double halfwidth() const { return profile.band_halfwidth(band_lo); }
};

struct RefinementExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Longest-edge bisection (Rivara LEPP) until every band tet is resolved at
// structured spacing target_h (longest edge <= sqrt(3) * target_h). Off-band
// tets are touched only by conformity propagation. Deterministic: ties on
// edge length break on the smaller sorted vertex-index pair.
void refine_to_band(TetMesh& mesh, const RefinementBand& band);

// Band-membership test used by refinement and statistics.
bool tet_in_band(const TetMesh& mesh, int32_t t, const RefinementBand& band);

struct MeshStatistics {
  std::size_t vertex_count = 0;
  std::size_t tet_count = 0;
  std::size_t band_tet_count = 0;
  double band_h_min = 0.0;   // per-tet diameters inside the band
  double band_h_max = 0.0;
  double band_h_mean = 0.0;
  double points_across_interface = 0.0;  // eps_width / mean spacing
};

MeshStatistics mesh_statistics(const TetMesh& mesh, const RefinementBand& band);

}  // namespace difem
