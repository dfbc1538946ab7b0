#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "difem/bvh.hpp"
#include "difem/surface_mesh.hpp"
#include "oracles.hpp"

#include <cstdio>
#include <random>

using namespace difem;

TEST_CASE("torus triangulation invariants") {
  TorusGeometry g;
  for (double hs : {0.3, 0.15}) {
    const SurfaceTriangulation tri = triangulate_torus(g, hs);
    CHECK(tri.euler_characteristic() == 0);
    CHECK(tri.is_watertight());
    CHECK(tri.max_edge_length() <= hs + 1e-12);
    for (const Vec3& v : tri.vertices) CHECK(std::fabs(g.signed_distance(v)) < 1e-12);
  }
  CHECK_THROWS_AS(triangulate_torus(g, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(triangulate_torus(g, 0.0), std::invalid_argument);
}

TEST_CASE("triangulated area converges to 4 pi^2 R r at second order") {
  TorusGeometry g;
  const double exact = 4.0 * M_PI * M_PI * g.R * g.r;
  std::vector<double> hs{0.4, 0.2, 0.1, 0.05}, err;
  for (double h : hs) err.push_back(exact - triangulate_torus(g, h).total_area());
  for (double e : err) CHECK(e > 0.0);  // inscribed => area deficit
  CHECK(oracle::loglog_slope(hs, err) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("OFF round trip") {
  TorusGeometry g;
  const SurfaceTriangulation tri = triangulate_torus(g, 0.35);
  const std::string path = "roundtrip.off";
  write_off(tri, path);
  const SurfaceTriangulation back = read_off(path);
  std::remove(path.c_str());
  REQUIRE(back.vertex_count() == tri.vertex_count());
  REQUIRE(back.triangle_count() == tri.triangle_count());
  for (std::size_t i = 0; i < tri.vertex_count(); ++i)
    CHECK(norm(back.vertices[i] - tri.vertices[i]) < 1e-9);
  CHECK(back.triangles == tri.triangles);
}

TEST_CASE("BVH nearest equals linear scan") {
  TorusGeometry g;
  const SurfaceTriangulation tri = triangulate_torus(g, 0.2);
  const TriangleBvh bvh(tri);
  CHECK(bvh.box_invariant_holds());
  CHECK(bvh.height() <= 4.0 * std::log2(double(tri.triangle_count())) + 8.0);

  std::mt19937 rng(29);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 p{c(rng), c(rng), c(rng)};
    const NearestHit a = bvh.nearest(p);
    const NearestHit b = bvh.nearest_linear_scan(p);
    CHECK(a.distance2 == doctest::Approx(b.distance2).epsilon(1e-12));
    CHECK(norm(a.point - b.point) < 1e-9);
  }
  // a triangulation vertex is at distance zero
  const NearestHit hit = bvh.nearest(tri.vertices[5]);
  CHECK(hit.distance2 < 1e-24);
  CHECK(std::fabs(bvh.signed_distance(tri.vertices[5])) < 1e-12);
}

TEST_CASE("mesh signed distance sign and Lipschitz bound") {
  TorusGeometry g;
  const SurfaceTriangulation tri = triangulate_torus(g, 0.1);
  const TriangleBvh bvh(tri);

  CHECK(bvh.signed_distance({1.5, 0, 0.01}) > 0.0);
  CHECK(bvh.signed_distance({1.2, 0, 0}) < 0.0);  // tube interior

  std::mt19937 rng(31);
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const Vec3 p{c(rng), c(rng), c(rng)};
    const Vec3 q{c(rng), c(rng), c(rng)};
    const double dp = bvh.signed_distance(p), dq = bvh.signed_distance(q);
    CHECK(std::fabs(dp - dq) <= norm(p - q) + 1e-12);
    // sign agrees with the analytic classification away from the chordal gap
    const double rho = g.signed_distance(p);
    if (std::fabs(rho) > 2.0 * 0.1 * 0.1) CHECK(dp * rho > 0.0);
  }
}

TEST_CASE("mesh signed distance is second order near the surface") {
  TorusGeometry g;
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI), off(-0.2, 0.2);
  std::vector<Vec3> samples;
  for (int i = 0; i < 1000; ++i) {
    const Vec3 y = g.parametric(ang(rng), ang(rng));
    samples.push_back(y + g.normal(y) * off(rng));
  }
  std::vector<double> hs{0.2, 0.1, 0.05, 0.025}, err;
  for (double h : hs) {
    const TriangleBvh bvh(triangulate_torus(g, h));
    double e = 0.0;
    for (const Vec3& x : samples)
      e = std::max(e, std::fabs(bvh.signed_distance(x) - g.signed_distance(x)));
    err.push_back(e);
  }
  CHECK(oracle::loglog_slope(hs, err) == doctest::Approx(2.0).epsilon(0.15));
}
