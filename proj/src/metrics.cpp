#include "difem/metrics.hpp"

#include "difem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace difem {
namespace {

constexpr double kWeightCutoff = 1e-14;

double quadrature_halfwidth(const InterfaceProfile& profile) {
  const double eps = profile.epsilon;
  return 1.1 * eps / 12.0 * std::log(36.0 / (eps * kWeightCutoff));
}

}  // namespace

double e_di(const TetMesh& mesh, const TorusGeometry& torus, const InterfaceProfile& profile,
            const SquaredDiffFn& squared_diff) {
  const double hw = quadrature_halfwidth(profile);
  const QuadratureRule& rule = quadrature_degree5();
  double acc = 0.0;
  for (int32_t t = 0; t < static_cast<int32_t>(mesh.tets.size()); ++t) {
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
    const double vol = mesh.tet_volume(t);
    for (const auto& qp : rule.points) {
      const Vec3 x = tet_point(mesh, t, qp.bary);
      const double w = profile.well_of_rho(torus.signed_distance(x));
      if (w < kWeightCutoff) continue;
      acc += qp.weight * vol * w * squared_diff(t, qp.bary, x);
    }
  }
  return std::sqrt(acc);
}

double well_integral(const TetMesh& mesh, const TorusGeometry& torus,
                     const InterfaceProfile& profile) {
  const double v = e_di(mesh, torus, profile,
                        [](int32_t, const std::array<double, 4>&, const Vec3&) { return 1.0; });
  return v * v;
}

double err_rho(const TetMesh& mesh, const DiscreteGeometry& geom) {
  return e_di(mesh, *geom.torus, geom.profile,
              [&](int32_t t, const std::array<double, 4>& bary, const Vec3& x) {
                const double d = geom.rho_h->eval(t, bary) - geom.torus->signed_distance(x);
                return d * d;
              });
}

double err_phi(const TetMesh& mesh, const DiscreteGeometry& geom) {
  return e_di(mesh, *geom.torus, geom.profile,
              [&](int32_t t, const std::array<double, 4>& bary, const Vec3& x) {
                const double phi_h = (geom.phi_eval == PhiEvaluation::nodal)
                                         ? geom.phi_h->eval(t, bary)
                                         : geom.profile.phase_field(geom.rho_h->eval(t, bary));
                const double d =
                    phi_h - geom.profile.phase_field(geom.torus->signed_distance(x));
                return d * d;
              });
}

double err_nu_A(const TetMesh& mesh, const DiscreteGeometry& geom) {
  return e_di(mesh, *geom.torus, geom.profile,
              [&](int32_t t, const std::array<double, 4>& bary, const Vec3& x) {
                const Vec3 nu_h = geom.recovered_gradients ? geom.grad_rho_rec->eval(t, bary)
                                                           : geom.rho_h->element_gradient(t);
                return norm2(geom.torus->normal(x) - nu_h);
              });
}

double err_nu_B(const TetMesh& mesh, const DiscreteGeometry& geom) {
  return e_di(mesh, *geom.torus, geom.profile,
              [&](int32_t t, const std::array<double, 4>& bary, const Vec3& x) {
                Vec3 g = geom.recovered_gradients ? geom.grad_phi_rec->eval(t, bary)
                                                  : geom.phi_h->element_gradient(t);
                const double len = norm(g);
                // collapsed gradient: the discrete normal carries no
                // information, count the full analytic normal as error
                const Vec3 nu_h = (len >= 1e-14) ? (g * (-1.0 / len)) : Vec3{};
                return norm2(geom.torus->normal(x) - nu_h);
              });
}

double err_u(const TetMesh& mesh, const VectorField& u_h, const TorusGeometry& torus,
             const InterfaceProfile& profile) {
  const ManufacturedSolution exact(torus);
  return e_di(mesh, torus, profile,
              [&](int32_t t, const std::array<double, 4>& bary, const Vec3& x) {
                return norm2(u_h.eval(t, bary) - exact.extension(x));
              });
}

double normal_component_error(const TetMesh& mesh, const VectorField& u_h,
                              const TorusGeometry& torus, const InterfaceProfile& profile) {
  return e_di(mesh, torus, profile,
              [&](int32_t t, const std::array<double, 4>& bary, const Vec3& x) {
                const double un = dot(u_h.eval(t, bary), torus.normal(x));
                return un * un;
              });
}

OrderFit observed_order(const std::vector<std::pair<double, double>>& scale_error) {
  if (scale_error.size() < 3)
    throw std::invalid_argument("observed_order: need at least 3 points");
  for (const auto& [s, e] : scale_error)
    if (!(s > 0.0) || !(e > 0.0))
      throw std::invalid_argument("observed_order: scales and errors must be positive");

  const std::size_t n = scale_error.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [s, e] : scale_error) {
    const double lx = std::log(s), ly = std::log(e);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  OrderFit fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const auto& [s0, e0] = scale_error[i];
    const auto& [s1, e1] = scale_error[i + 1];
    fit.pair_orders.push_back(std::log(e0 / e1) / std::log(s0 / s1));
  }
  return fit;
}

}  // namespace difem
