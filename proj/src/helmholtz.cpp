#include "difem/helmholtz.hpp"

#include <cmath>

namespace difem {
namespace {

// |rho| beyond which W drops under the cutoff: W ~ 36/eps exp(-12|rho|/eps).
double band_quadrature_halfwidth(const InterfaceProfile& profile, double cutoff) {
  const double eps = profile.epsilon;
  return 1.1 * eps / 12.0 * std::log(36.0 / (eps * cutoff));
}

struct TetContext {
  std::array<Vec3, 4> grads;
  std::array<int32_t, 4> verts;
  double volume;
};

TetContext tet_context(const TetMesh& mesh, int32_t t) {
  return {shape_gradients(mesh, t), mesh.tets[t].v, mesh.tet_volume(t)};
}

bool touches(const TetMesh& mesh, const DiscreteGeometry& geom, int32_t t, double halfwidth) {
  // quadratic-dip margin for the curved analytic level set
  const double d = mesh.tet_diameter(t);
  return geom.tet_touches_band(t, mesh, halfwidth + 0.25 * d * d);
}

}  // namespace

void assemble_helmholtz(const TetMesh& mesh, const DiscreteGeometry& geom,
                        const DiffuseProblemConfig& cfg, SparseSystem& sys) {
  const double hw = band_quadrature_halfwidth(geom.profile, cfg.weight_cutoff);
  const QuadratureRule& rule = quadrature_degree5();
  for (int32_t t = 0; t < static_cast<int32_t>(mesh.tets.size()); ++t) {
    if (!touches(mesh, geom, t, hw)) continue;
    const TetContext ctx = tet_context(mesh, t);
    Mat3 local[4][4];
    bool any = false;
    for (const auto& qp : rule.points) {
      const Vec3 x = tet_point(mesh, t, qp.bary);
      const double w = geom.well_at(t, qp.bary, x);
      if (w < cfg.weight_cutoff) continue;
      any = true;
      const Mat3 pi = projector(geom.normal_at(t, qp.bary, x));
      const double scale = qp.weight * ctx.volume * w;
      for (int b = 0; b < 4; ++b)
        for (int a = 0; a < 4; ++a) {
          const double stiff = dot(ctx.grads[a], ctx.grads[b]);
          const double mass = qp.bary[a] * qp.bary[b];
          const double f = scale * (stiff + mass);
          for (int k = 0; k < 9; ++k) local[b][a].a[k] += f * pi.a[k];
        }
    }
    if (!any) continue;
    for (int b = 0; b < 4; ++b)
      for (int a = 0; a < 4; ++a) sys.add_block(ctx.verts[b], ctx.verts[a], local[b][a]);
  }
}

void assemble_penalty(const TetMesh& mesh, const DiscreteGeometry& geom,
                      const DiffuseProblemConfig& cfg, SparseSystem& sys) {
  const double c_n = cfg.penalty_factor();
  const double hw = band_quadrature_halfwidth(geom.profile, cfg.weight_cutoff);
  const QuadratureRule& rule = quadrature_degree5();
  for (int32_t t = 0; t < static_cast<int32_t>(mesh.tets.size()); ++t) {
    if (!touches(mesh, geom, t, hw)) continue;
    const TetContext ctx = tet_context(mesh, t);
    Mat3 local[4][4];
    bool any = false;
    for (const auto& qp : rule.points) {
      const Vec3 x = tet_point(mesh, t, qp.bary);
      const double w = geom.well_at(t, qp.bary, x);
      if (w < cfg.weight_cutoff) continue;
      any = true;
      const Vec3 nu = geom.normal_at(t, qp.bary, x);
      const Mat3 nn = Mat3::outer(nu, nu);
      const double scale = c_n * qp.weight * ctx.volume * w;
      for (int b = 0; b < 4; ++b)
        for (int a = 0; a < 4; ++a) {
          const double f = scale * qp.bary[a] * qp.bary[b];
          for (int k = 0; k < 9; ++k) local[b][a].a[k] += f * nn.a[k];
        }
    }
    if (!any) continue;
    for (int b = 0; b < 4; ++b)
      for (int a = 0; a < 4; ++a) sys.add_block(ctx.verts[b], ctx.verts[a], local[b][a]);
  }
}

void assemble_regularization(const TetMesh& mesh, const DiffuseProblemConfig& cfg,
                             SparseSystem& sys) {
  // gradients are elementwise constant, so the integral is exact
  for (int32_t t = 0; t < static_cast<int32_t>(mesh.tets.size()); ++t) {
    const TetContext ctx = tet_context(mesh, t);
    for (int b = 0; b < 4; ++b)
      for (int a = 0; a < 4; ++a) {
        const double f = cfg.delta * ctx.volume * dot(ctx.grads[a], ctx.grads[b]);
        Mat3 m;
        m(0, 0) = m(1, 1) = m(2, 2) = f;
        sys.add_block(ctx.verts[b], ctx.verts[a], m);
      }
  }
}

void assemble_rhs(const TetMesh& mesh, const ManufacturedSolution& exact,
                  const InterfaceProfile& profile, const DiffuseProblemConfig& cfg,
                  SparseSystem& sys) {
  const TorusGeometry& torus = exact.torus;
  const double hw = band_quadrature_halfwidth(profile, cfg.weight_cutoff);
  const QuadratureRule& rule = quadrature_degree5();
  std::vector<double>& rhs = sys.rhs();
  for (int32_t t = 0; t < static_cast<int32_t>(mesh.tets.size()); ++t) {
    // analytic-rho band test with curvature margin
    const auto& tv = mesh.tets[t].v;
    double lo = 1e30, hi = -1e30;
    for (int k = 0; k < 4; ++k) {
      const double rho = torus.signed_distance(mesh.vertices[tv[k]]);
      lo = std::min(lo, rho);
      hi = std::max(hi, rho);
    }
    const double d = mesh.tet_diameter(t);
    const double margin = hw + 0.25 * d * d;
    if (lo > margin || hi < -margin) continue;

    const TetContext ctx = tet_context(mesh, t);
    Vec3 local[4];
    bool any = false;
    for (const auto& qp : rule.points) {
      const Vec3 x = tet_point(mesh, t, qp.bary);
      const double w = profile.well_of_rho(torus.signed_distance(x));
      if (w < cfg.weight_cutoff) continue;
      any = true;
      const Mat3 pi = projector(torus.normal(x));
      const Vec3 u = exact.extension(x);
      const Mat3 grad_u = exact.extended_gradient(x);
      const Mat3 proj_grad_u = pi * grad_u * pi;
      const double scale = qp.weight * ctx.volume * w;
      const Vec3 pu = pi * u;
      for (int b = 0; b < 4; ++b) {
        // grad term: (Pi ext[grad u] Pi) g_b ; mass term: lambda_b Pi U
        local[b] += scale * (proj_grad_u * ctx.grads[b] + qp.bary[b] * pu);
      }
    }
    if (!any) continue;
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 3; ++c) rhs[3 * ctx.verts[b] + c] += local[b][c];
  }
}

HelmholtzSolution solve_problem(const TetMesh& mesh, const DiscreteGeometry& geom,
                                const DiffuseProblemConfig& cfg) {
  SparseSystem sys(mesh);
  assemble_helmholtz(mesh, geom, cfg, sys);
  assemble_penalty(mesh, geom, cfg, sys);
  assemble_regularization(mesh, cfg, sys);
  ManufacturedSolution exact(*geom.torus);
  assemble_rhs(mesh, exact, geom.profile, cfg, sys);

  std::vector<double> x;
  const SolveStats stats = solve_krylov(sys, x, cfg.tol, cfg.max_iter, cfg.method, cfg.precond);

  HelmholtzSolution sol{VectorField(mesh), stats, sys.size()};
  for (std::size_t v = 0; v < mesh.vertex_count(); ++v)
    sol.u.values[v] = {x[3 * v], x[3 * v + 1], x[3 * v + 2]};
  return sol;
}

}  // namespace difem
