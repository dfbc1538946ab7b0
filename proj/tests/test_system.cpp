#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "difem/helmholtz.hpp"
#include "difem/metrics.hpp"
#include "oracles.hpp"

#include <random>

using namespace difem;

namespace {

SignedDistanceFn torus_sdf() {
  return [](const Vec3& x) { return TorusGeometry{}.signed_distance(x); };
}

TetMesh band_mesh(double eps, double h, double h0 = 0.5) {
  TetMesh mesh = build_box_mesh({-2, -2, -2}, {2, 2, 2}, h0);
  refine_to_band(mesh, RefinementBand(InterfaceProfile(eps), torus_sdf(), h));
  return mesh;
}

DiffuseProblemConfig problem_config(double h) {
  DiffuseProblemConfig cfg;
  cfg.h = h;
  return cfg;
}

}  // namespace

TEST_CASE("assembled system is symmetric with banded support") {
  TorusGeometry torus;
  const double eps = 0.4, h = 0.25;
  const TetMesh mesh = band_mesh(eps, h);
  const DiscreteGeometry geom = make_analytic_geometry(torus, InterfaceProfile(eps));
  const DiffuseProblemConfig cfg = problem_config(h);

  SparseSystem sys(mesh);
  assemble_helmholtz(mesh, geom, cfg, sys);
  assemble_penalty(mesh, geom, cfg, sys);
  CHECK(sys.symmetry_error() < 1e-12);

  ManufacturedSolution exact(torus);
  assemble_rhs(mesh, exact, geom.profile, cfg, sys);

  // vertices whose basis support clears the quadrature band entirely
  // (|rho| beyond the cutoff halfwidth ~1.35 plus the coarse patch radius)
  // have exactly zero rows and rhs
  const double support = 1.9;
  std::size_t checked = 0;
  for (int32_t i = 0; i < static_cast<int32_t>(mesh.vertex_count()); ++i) {
    if (std::fabs(torus.signed_distance(mesh.vertices[i])) < support) continue;
    ++checked;
    const Mat3* diag = sys.find_block(i, i);
    if (diag) CHECK(frobenius_norm(*diag) == 0.0);
    for (int c = 0; c < 3; ++c) CHECK(sys.rhs()[3 * i + c] == 0.0);
  }
  CHECK(checked > 0);
}

TEST_CASE("penalty and regularization scale linearly") {
  TorusGeometry torus;
  const double eps = 0.4, h = 0.25;
  const TetMesh mesh = band_mesh(eps, h, 1.0);
  const DiscreteGeometry geom = make_analytic_geometry(torus, InterfaceProfile(eps));

  DiffuseProblemConfig c1 = problem_config(h), c2 = problem_config(h);
  c2.c_pen *= 2.0;
  c2.delta *= 2.0;
  SparseSystem p1(mesh), p2(mesh), r1(mesh), r2(mesh);
  assemble_penalty(mesh, geom, c1, p1);
  assemble_penalty(mesh, geom, c2, p2);
  assemble_regularization(mesh, c1, r1);
  assemble_regularization(mesh, c2, r2);

  std::mt19937 rng(43);
  std::normal_distribution<double> gauss;
  std::vector<double> x(p1.size());
  for (double& v : x) v = gauss(rng);
  std::vector<double> y1, y2;
  p1.matvec(x, y1);
  p2.matvec(x, y2);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(y2[i] == doctest::Approx(2.0 * y1[i]).epsilon(1e-12));
  r1.matvec(x, y1);
  r2.matvec(x, y2);
  for (std::size_t i = 0; i < x.size(); ++i) CHECK(y2[i] == doctest::Approx(2.0 * y1[i]).epsilon(1e-12));

  // regularization alone annihilates constant fields
  std::vector<double> ones(r1.size(), 1.0), out;
  r1.matvec(ones, out);
  for (double v : out) CHECK(std::fabs(v) < 1e-10);
}

TEST_CASE("penalty vanishes on pointwise-tangential fields") {
  TorusGeometry torus;
  const double eps = 0.4, h = 0.25;
  const TetMesh mesh = band_mesh(eps, h, 1.0);
  const DiscreteGeometry geom = make_analytic_geometry(torus, InterfaceProfile(eps));
  SparseSystem p(mesh);
  assemble_penalty(mesh, geom, problem_config(h), p);

  // the quadratic form is PSD and zero iff nu.U = 0 at all quadrature points;
  // check PSD on random vectors and smallness on the manufactured interpolant
  std::mt19937 rng(47);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> x(p.size()), y;
    for (double& v : x) v = gauss(rng);
    p.matvec(x, y);
    double quad = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) quad += x[i] * y[i];
    CHECK(quad >= 0.0);
  }

  ManufacturedSolution exact(torus);
  std::vector<double> u(p.size(), 0.0), nu(p.size(), 0.0), tmp;
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
    const Vec3& v = mesh.vertices[i];
    if (std::fabs(torus.signed_distance(v)) > 1.2) continue;
    try {
      const Vec3 uval = exact.extension(v);
      const Vec3 nval = torus.normal(v);
      for (int c = 0; c < 3; ++c) {
        u[3 * i + c] = uval[c];
        nu[3 * i + c] = nval[c];
      }
    } catch (const MedialAxisError&) {
      // nodes exactly on the medial axis carry negligible well weight
    }
  }
  auto quad_form = [&](const std::vector<double>& x) {
    p.matvec(x, tmp);
    double q = 0.0, s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      q += x[i] * tmp[i];
      s += x[i] * x[i];
    }
    return std::pair{q, s};
  };
  const auto [q_nu, s_nu] = quad_form(nu);
  const auto [q_u, s_u] = quad_form(u);

  // a nu-aligned field realizes the full C_N int W energy ...
  const double cn = 10.0 / (h * h);
  const double wi = well_integral(mesh, torus, InterfaceProfile(eps));
  CHECK(q_nu == doctest::Approx(cn * wi).epsilon(0.15));
  // ... while the tangential interpolant only leaks O(h^2) normal component
  CHECK(q_u / s_u < 0.02 * q_nu / s_nu);
}

TEST_CASE("full system is SPD (dense eigenvalue oracle)") {
  TorusGeometry torus;
  const double eps = 0.4, h = 0.5;
  TetMesh mesh = build_box_mesh({-2, -2, -2}, {2, 2, 2}, 1.0);  // 125 vertices
  const DiscreteGeometry geom = make_analytic_geometry(torus, InterfaceProfile(eps));
  const DiffuseProblemConfig cfg = problem_config(h);
  SparseSystem sys(mesh);
  assemble_helmholtz(mesh, geom, cfg, sys);
  assemble_penalty(mesh, geom, cfg, sys);
  assemble_regularization(mesh, cfg, sys);

  const std::size_t nv = mesh.vertex_count(), n = 3 * nv;
  std::vector<double> dense(n * n, 0.0);
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = 0; j < nv; ++j) {
      const Mat3* blk = sys.find_block(int32_t(i), int32_t(j));
      if (!blk) continue;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) dense[(3 * i + r) * n + (3 * j + c)] = (*blk)(r, c);
    }
  const auto eig = oracle::symmetric_eigenvalues(dense, n);
  CHECK(eig.front() > 0.0);
}

TEST_CASE("rhs energy consistency against the interpolated solution") {
  TorusGeometry torus;
  const double eps = 0.4, h = 0.125;
  const TetMesh mesh = band_mesh(eps, h);
  const DiscreteGeometry geom = make_analytic_geometry(torus, InterfaceProfile(eps));
  const DiffuseProblemConfig cfg = problem_config(h);

  SparseSystem hmat(mesh);
  assemble_helmholtz(mesh, geom, cfg, hmat);
  SparseSystem f(mesh);
  ManufacturedSolution exact(torus);
  assemble_rhs(mesh, exact, geom.profile, cfg, f);

  std::vector<double> u(hmat.size(), 0.0);
  for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
    if (std::fabs(torus.signed_distance(mesh.vertices[i])) > 1.2) continue;
    try {
      const Vec3 val = exact.extension(mesh.vertices[i]);
      for (int c = 0; c < 3; ++c) u[3 * i + c] = val[c];
    } catch (const MedialAxisError&) {
      // nodes exactly on the medial axis carry negligible well weight
    }
  }
  std::vector<double> hu;
  hmat.matvec(u, hu);
  double energy = 0.0, load = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    energy += u[i] * hu[i];
    load += u[i] * f.rhs()[i];
  }
  // F(I_h U) equals the H-energy of I_h U up to discretization error
  CHECK(load == doctest::Approx(energy).epsilon(0.1));
}

TEST_CASE("solve with zero data returns zero") {
  TorusGeometry torus;
  const double eps = 0.4, h = 0.25;
  const TetMesh mesh = band_mesh(eps, h, 1.0);
  const DiscreteGeometry geom = make_analytic_geometry(torus, InterfaceProfile(eps));
  SparseSystem sys(mesh);
  const DiffuseProblemConfig cfg = problem_config(h);
  assemble_helmholtz(mesh, geom, cfg, sys);
  assemble_penalty(mesh, geom, cfg, sys);
  assemble_regularization(mesh, cfg, sys);
  std::vector<double> x;
  const SolveStats stats = solve_krylov(sys, x, 1e-10, 1000);
  CHECK(stats.iterations == 0);
  for (double v : x) CHECK(v == 0.0);
}

TEST_CASE("e_di is a weighted norm") {
  TorusGeometry torus;
  const InterfaceProfile profile(0.3);
  const TetMesh mesh = band_mesh(0.3, 0.125);

  const auto zero = [](int32_t, const std::array<double, 4>&, const Vec3&) { return 0.0; };
  CHECK(e_di(mesh, torus, profile, zero) == 0.0);

  // homogeneity: scaling the difference by 3 scales the error by 3
  ScalarField f(mesh);
  std::mt19937 rng(53);
  std::normal_distribution<double> gauss;
  for (double& v : f.values) v = gauss(rng);
  const auto diff1 = [&](int32_t t, const std::array<double, 4>& b, const Vec3&) {
    const double v = f.eval(t, b);
    return v * v;
  };
  const auto diff3 = [&](int32_t t, const std::array<double, 4>& b, const Vec3&) {
    const double v = 3.0 * f.eval(t, b);
    return v * v;
  };
  CHECK(e_di(mesh, torus, profile, diff3) ==
        doctest::Approx(3.0 * e_di(mesh, torus, profile, diff1)).epsilon(1e-10));

  // triangle inequality on random field pairs
  ScalarField g(mesh);
  for (double& v : g.values) v = gauss(rng);
  const auto diff_g = [&](int32_t t, const std::array<double, 4>& b, const Vec3&) {
    const double v = g.eval(t, b);
    return v * v;
  };
  const auto diff_sum = [&](int32_t t, const std::array<double, 4>& b, const Vec3&) {
    const double v = f.eval(t, b) + g.eval(t, b);
    return v * v;
  };
  CHECK(e_di(mesh, torus, profile, diff_sum) <=
        e_di(mesh, torus, profile, diff1) + e_di(mesh, torus, profile, diff_g) + 1e-10);
}

TEST_CASE("well integral approximates the torus area") {
  TorusGeometry torus;
  const double eps = 0.2, h = eps / 4.0;
  const TetMesh mesh = band_mesh(eps, h);
  const double area = 4.0 * M_PI * M_PI * torus.R * torus.r;
  const double wi = well_integral(mesh, torus, InterfaceProfile(eps));
  CHECK(wi == doctest::Approx(area).epsilon(0.02));

  // constant-1 difference reproduces sqrt(int W)
  const auto one = [](int32_t, const std::array<double, 4>&, const Vec3&) { return 1.0; };
  CHECK(e_di(mesh, torus, InterfaceProfile(eps), one) ==
        doctest::Approx(std::sqrt(area)).epsilon(0.02));
}

TEST_CASE("normal component error") {
  TorusGeometry torus;
  const double eps = 0.3;
  const InterfaceProfile profile(eps);

  // field equal to nu has error sqrt(int W); zero field has none
  std::vector<double> hs{0.2, 0.1, 0.05}, err;
  for (double h : hs) {
    const TetMesh mesh = band_mesh(eps, h);
    VectorField nu_field(mesh), zero(mesh), tang(mesh);
    ManufacturedSolution exact(torus);
    for (std::size_t i = 0; i < mesh.vertex_count(); ++i) {
      if (std::fabs(torus.signed_distance(mesh.vertices[i])) > 1.2) continue;
      try {
        nu_field.values[i] = torus.normal(mesh.vertices[i]);
        tang.values[i] = exact.extension(mesh.vertices[i]);
      } catch (const MedialAxisError&) {
        // nodes exactly on the medial axis carry negligible well weight
      }
    }
    if (h == hs.front()) {
      // interpolating nu only loses O(h^2), so its normal energy is the full
      // sqrt(int W); the zero field has none at all
      const double wi = well_integral(mesh, torus, profile);
      CHECK(normal_component_error(mesh, nu_field, torus, profile) ==
            doctest::Approx(std::sqrt(wi)).epsilon(0.02));
      CHECK(normal_component_error(mesh, zero, torus, profile) == 0.0);
    }
    // nodal interpolation of a tangential field leaks O(h^2) normal component
    err.push_back(normal_component_error(mesh, tang, torus, profile));
  }
  CHECK(oracle::loglog_slope(hs, err) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("observed order") {
  std::vector<std::pair<double, double>> quad, flat, noisy;
  std::mt19937 rng(59);
  std::uniform_real_distribution<double> noise(0.99, 1.01);
  for (double s : {0.4, 0.2, 0.1, 0.05, 0.025}) {
    quad.push_back({s, s * s});
    flat.push_back({s, 3.7});
    noisy.push_back({s, 2.0 * std::pow(s, 1.5) * noise(rng)});
  }
  CHECK(observed_order(quad).slope == doctest::Approx(2.0).epsilon(1e-12));
  for (double r : observed_order(quad).pair_orders) CHECK(r == doctest::Approx(2.0));
  CHECK(observed_order(flat).slope == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(observed_order(noisy).slope == doctest::Approx(1.5).epsilon(0.05 / 1.5));

  // invariant under uniform scaling of the errors
  auto scaled = noisy;
  for (auto& [s, e] : scaled) e *= 17.0;
  CHECK(observed_order(scaled).slope == doctest::Approx(observed_order(noisy).slope));

  CHECK_THROWS_AS(observed_order({{1.0, 1.0}, {0.5, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(observed_order({{1.0, 1.0}, {0.5, 0.5}, {0.25, -1.0}}), std::invalid_argument);
}
