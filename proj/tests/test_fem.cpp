#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "difem/fields.hpp"
#include "difem/quadrature.hpp"
#include "difem/solver.hpp"
#include "difem/sparse.hpp"
#include "oracles.hpp"

#include <random>

using namespace difem;

namespace {

// exact integral of lambda0^a lambda1^b lambda2^c lambda3^d over the
// reference tet of volume 1/6: 6V * a! b! c! d! / (a+b+c+d+3)!
double monomial_integral(int a, int b, int c, int d) {
  auto fact = [](int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  return fact(a) * fact(b) * fact(c) * fact(d) / fact(a + b + c + d + 3);
}

void check_exactness(const QuadratureRule& rule, int degree) {
  CHECK(rule.weight_sum() == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& p : rule.points) {
    CHECK(p.weight > 0.0);
    CHECK(p.bary[0] + p.bary[1] + p.bary[2] + p.bary[3] == doctest::Approx(1.0).epsilon(1e-13));
  }
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      for (int c = 0; a + b + c <= degree; ++c)
        for (int d = 0; a + b + c + d <= degree; ++d) {
          double q = 0.0;
          for (const auto& p : rule.points)
            q += p.weight * std::pow(p.bary[0], a) * std::pow(p.bary[1], b) *
                 std::pow(p.bary[2], c) * std::pow(p.bary[3], d);
          // rule weights integrate against volume 1/6 reference measure
          CHECK(q / 6.0 == doctest::Approx(monomial_integral(a, b, c, d)).epsilon(1e-12));
        }
}

TetMesh unit_box(double h0) { return build_box_mesh({-2, -2, -2}, {2, 2, 2}, h0); }

}  // namespace

TEST_CASE("quadrature exactness") {
  check_exactness(quadrature_degree2(), 2);
  check_exactness(quadrature_degree5(), 5);
  check_exactness(quadrature_subdivided(), 5);
}

TEST_CASE("field evaluation") {
  const TetMesh mesh = unit_box(1.0);
  ScalarField f(mesh);
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i) f.values[i] = mesh.vertices[i].x;

  CHECK(f.eval(0, {1, 0, 0, 0}) == mesh.vertices[mesh.tets[0].v[0]].x);
  const std::array<double, 4> centroid{0.25, 0.25, 0.25, 0.25};
  CHECK(f.eval(7, centroid) == doctest::Approx(mesh.centroid(7).x).epsilon(1e-13));

  ScalarField c(mesh);
  for (double& v : c.values) v = 3.5;
  CHECK(c.eval(11, {0.1, 0.2, 0.3, 0.4}) == doctest::Approx(3.5).epsilon(1e-13));
  CHECK_THROWS_AS(f.eval(0, {0.5, 0.5, 0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("element gradients") {
  const TetMesh mesh = unit_box(1.0);
  ScalarField f(mesh), c(mesh);
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i) f.values[i] = 2.0 * mesh.vertices[i].x;
  for (double& v : c.values) v = 1.0;
  for (int32_t t : {0, 5, 100}) {
    CHECK(norm(f.element_gradient(t) - Vec3{2, 0, 0}) < 1e-12);
    CHECK(norm(c.element_gradient(t)) < 1e-12);
  }

  // secant gradient of x^2 converges to 2x at first order
  std::vector<double> hs{1.0, 0.5, 0.25}, err;
  for (double h : hs) {
    const TetMesh m = unit_box(h);
    ScalarField q(m);
    for (std::size_t i = 0; i < m.vertex_count(); ++i)
      q.values[i] = m.vertices[i].x * m.vertices[i].x;
    double e = 0.0;
    for (int32_t t = 0; t < static_cast<int32_t>(m.tet_count()); ++t)
      e = std::max(e, std::fabs(q.element_gradient(t).x - 2.0 * m.centroid(t).x));
    err.push_back(e);
  }
  CHECK(oracle::loglog_slope(hs, err) == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("gradient recovery") {
  // linear functions are recovered exactly
  const TetMesh mesh = unit_box(1.0);
  ScalarField lin(mesh);
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i)
    lin.values[i] = 1.5 * mesh.vertices[i].x - 0.5 * mesh.vertices[i].y;
  const VectorField rec = recover_nodal_gradient(lin);
  for (const Vec3& v : rec.values) CHECK(norm(v - Vec3{1.5, -0.5, 0}) < 1e-12);

  ScalarField c(mesh);
  for (double& v : c.values) v = 2.0;
  for (const Vec3& v : recover_nodal_gradient(c).values) CHECK(norm(v) < 1e-12);

  // on interior vertices of the structured mesh, quadratics are recovered
  // exactly (point-symmetric patches) and cubics at second order
  std::vector<double> hs{1.0, 0.5, 0.25}, err;
  for (double h : hs) {
    const TetMesh m = unit_box(h);
    ScalarField quad(m), cub(m);
    for (std::size_t i = 0; i < m.vertex_count(); ++i) {
      const Vec3& x = m.vertices[i];
      quad.values[i] = x.x * x.x;
      cub.values[i] = x.x * x.x * x.x + x.x * x.y * x.z;
    }
    const VectorField rq = recover_nodal_gradient(quad);
    const VectorField rc = recover_nodal_gradient(cub);
    double e = 0.0;
    for (std::size_t i = 0; i < m.vertex_count(); ++i) {
      const Vec3& x = m.vertices[i];
      const bool interior = std::min({x.x + 2, 2 - x.x, x.y + 2, 2 - x.y, x.z + 2, 2 - x.z}) >
                            h * 0.5;
      if (!interior) continue;
      CHECK(std::fabs(rq.values[i].x - 2.0 * x.x) < 1e-12);
      const Vec3 g{3.0 * x.x * x.x + x.y * x.z, x.x * x.z, x.x * x.y};
      e = std::max(e, norm(rc.values[i] - g));
    }
    err.push_back(e);
  }
  CHECK(oracle::loglog_slope(hs, err) >= 1.9);
}

TEST_CASE("L2 interpolation order") {
  std::vector<double> hs{1.0, 0.5, 0.25}, err;
  for (double h : hs) {
    const TetMesh m = unit_box(h);
    auto f = [](const Vec3& p) { return std::sin(p.x) * std::cos(0.5 * p.y) + 0.3 * p.z * p.z; };
    ScalarField fh(m);
    for (std::size_t i = 0; i < m.vertex_count(); ++i) fh.values[i] = f(m.vertices[i]);
    double acc = 0.0;
    const QuadratureRule& rule = quadrature_degree5();
    for (int32_t t = 0; t < static_cast<int32_t>(m.tet_count()); ++t) {
      const double vol = m.tet_volume(t);
      for (const auto& qp : rule.points) {
        const double d = fh.eval(t, qp.bary) - f(tet_point(m, t, qp.bary));
        acc += qp.weight * vol * d * d;
      }
    }
    err.push_back(std::sqrt(acc));
  }
  CHECK(oracle::loglog_slope(hs, err) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("sparse system structure") {
  const TetMesh mesh = unit_box(2.0);
  SparseSystem sys(mesh);
  CHECK(sys.block_rows() == mesh.vertex_count());

  Mat3 m = Mat3::identity();
  sys.add_block(0, 0, m);
  CHECK(sys.find_block(0, 0) != nullptr);
  CHECK((*sys.find_block(0, 0))(1, 1) == 1.0);
  // vertices 0 and the far corner share no tet
  const int32_t far = static_cast<int32_t>(mesh.vertex_count()) - 1;
  CHECK(sys.find_block(0, far) == nullptr);
  CHECK_THROWS_AS(sys.add_block(0, far, m), std::invalid_argument);
}

TEST_CASE("weighted mass matrix partitions the box volume") {
  const TetMesh mesh = unit_box(1.0);
  SparseSystem sys(mesh);
  const QuadratureRule& rule = quadrature_degree2();
  for (int32_t t = 0; t < static_cast<int32_t>(mesh.tet_count()); ++t) {
    const double vol = mesh.tet_volume(t);
    for (const auto& qp : rule.points)
      for (int b = 0; b < 4; ++b)
        for (int a = 0; a < 4; ++a) {
          Mat3 blk;
          blk(0, 0) = blk(1, 1) = blk(2, 2) = qp.weight * vol * qp.bary[a] * qp.bary[b];
          sys.add_block(mesh.tets[t].v[b], mesh.tets[t].v[a], blk);
        }
  }
  CHECK(sys.symmetry_error() < 1e-12);
  std::vector<double> ones(sys.size(), 1.0), out;
  sys.matvec(ones, out);
  double total = 0.0;
  for (double v : out) total += v;
  CHECK(total == doctest::Approx(3.0 * 64.0).epsilon(1e-10));  // 3 components
}

TEST_CASE("stiffness kernel contains constants") {
  const TetMesh mesh = unit_box(1.0);
  SparseSystem sys(mesh);
  for (int32_t t = 0; t < static_cast<int32_t>(mesh.tet_count()); ++t) {
    const auto grads = shape_gradients(mesh, t);
    const double vol = mesh.tet_volume(t);
    for (int b = 0; b < 4; ++b)
      for (int a = 0; a < 4; ++a) {
        Mat3 blk;
        blk(0, 0) = blk(1, 1) = blk(2, 2) = vol * dot(grads[a], grads[b]);
        sys.add_block(mesh.tets[t].v[b], mesh.tets[t].v[a], blk);
      }
  }
  std::vector<double> ones(sys.size(), 1.0), out;
  sys.matvec(ones, out);
  for (double v : out) CHECK(std::fabs(v) < 1e-10);
}

namespace {

// random symmetric diagonally dominant blocks on the mesh sparsity pattern
SparseSystem random_spd_system(const TetMesh& mesh, std::mt19937& rng) {
  SparseSystem sys(mesh);
  std::normal_distribution<double> gauss;
  const int32_t nv = static_cast<int32_t>(mesh.vertex_count());
  for (int32_t i = 0; i < nv; ++i)
    for (int32_t j = i; j < nv; ++j) {
      if (!sys.find_block(i, j)) continue;
      Mat3 m;
      for (double& v : m.a) v = 0.1 * gauss(rng);
      if (i == j) {
        m = m + m.transposed();
        for (int k = 0; k < 3; ++k) m(k, k) += 30.0;  // dominance => SPD
        sys.add_block(i, i, m);
      } else {
        sys.add_block(i, j, m);
        sys.add_block(j, i, m.transposed());
      }
    }
  for (double& v : sys.rhs()) v = gauss(rng);
  return sys;
}

std::vector<double> dense_reference(const SparseSystem& sys, std::size_t nv) {
  const std::size_t n = 3 * nv;
  std::vector<double> dense(n * n, 0.0);
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = 0; j < nv; ++j) {
      const Mat3* blk = sys.find_block(int32_t(i), int32_t(j));
      if (!blk) continue;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) dense[(3 * i + r) * n + (3 * j + c)] = (*blk)(r, c);
    }
  return oracle::dense_solve(dense, sys.rhs());
}

}  // namespace

TEST_CASE("krylov solvers agree with the dense oracle") {
  const TetMesh mesh = unit_box(2.0);  // 27 vertices, 81 unknowns
  std::mt19937 rng(41);
  const SparseSystem sys = random_spd_system(mesh, rng);
  const std::vector<double> ref = dense_reference(sys, mesh.vertex_count());

  for (auto method : {KrylovMethod::cg, KrylovMethod::bicgstab2})
    for (auto precond : {Preconditioner::none, Preconditioner::block_jacobi}) {
      std::vector<double> x;
      const SolveStats stats = solve_krylov(sys, x, 1e-12, 5000, method, precond);
      CHECK(stats.relative_residual <= 1e-12);
      double diff = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) diff = std::max(diff, std::fabs(x[i] - ref[i]));
      CHECK(diff < 1e-8);
    }
}

TEST_CASE("krylov edge cases") {
  const TetMesh mesh = unit_box(2.0);
  SparseSystem sys(mesh);
  const int32_t nv = static_cast<int32_t>(mesh.vertex_count());
  // diagonal SPD system solves to machine precision immediately
  for (int32_t i = 0; i < nv; ++i) {
    Mat3 m;
    m(0, 0) = 2.0;
    m(1, 1) = 3.0;
    m(2, 2) = 4.0;
    sys.add_block(i, i, m);
  }
  for (std::size_t i = 0; i < sys.size(); ++i) sys.rhs()[i] = double(i % 7) - 3.0;
  std::vector<double> x;
  const SolveStats stats = solve_krylov(sys, x, 1e-13, 100, KrylovMethod::cg,
                                        Preconditioner::block_jacobi);
  CHECK(stats.iterations <= 2);
  for (std::size_t i = 0; i < sys.size(); ++i)
    CHECK(x[i] == doctest::Approx(sys.rhs()[i] / (2.0 + i % 3)).epsilon(1e-10));

  // zero rhs => zero solution, no iterations
  for (double& v : sys.rhs()) v = 0.0;
  std::vector<double> y;
  CHECK(solve_krylov(sys, y, 1e-12, 100).iterations == 0);
  for (double v : y) CHECK(v == 0.0);

  // non-convergence is an explicit failure carrying the residual
  for (double& v : sys.rhs()) v = 1.0;
  std::vector<double> z;
  CHECK_THROWS_AS(solve_krylov(sys, z, 1e-14, 1, KrylovMethod::cg, Preconditioner::none),
                  SolverDiverged);
}
