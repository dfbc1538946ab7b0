#include "difem/geometry_field.hpp"

#include <cmath>
#include <stdexcept>

namespace difem {

double DiscreteGeometry::rho_at(int32_t tet, const std::array<double, 4>& bary,
                                const Vec3& x) const {
  if (var_source == VariableSource::analytic) return torus->signed_distance(x);
  return rho_h->eval(tet, bary);
}

double DiscreteGeometry::well_at(int32_t tet, const std::array<double, 4>& bary,
                                 const Vec3& x) const {
  if (var_source == VariableSource::sampled && phi_eval == PhiEvaluation::nodal)
    return profile.well_potential(phi_h->eval(tet, bary));
  return profile.well_of_rho(rho_at(tet, bary, x));
}

Vec3 DiscreteGeometry::normal_at(int32_t tet, const std::array<double, 4>& bary,
                                 const Vec3& x) const {
  if (normal_source == NormalSource::analytic) return torus->normal(x);
  Vec3 v;
  if (recovered_gradients) {
    v = nu_nodal->eval(tet, bary);
  } else {
    const ScalarField& src = (normal_source == NormalSource::grad_rho) ? *rho_h : *phi_h;
    v = src.element_gradient(tet);
    if (normal_source == NormalSource::grad_phi) v = -v;
  }
  const double len = norm(v);
  if (len < 1e-8)
    throw std::logic_error("DiscreteGeometry: normal undefined at evaluation point "
                           "(gradient collapse outside the band)");
  return v / len;
}

bool DiscreteGeometry::tet_touches_band(int32_t tet, const TetMesh& mesh,
                                        double halfwidth) const {
  const auto& v = mesh.tets[tet].v;
  double lo = 1e30, hi = -1e30;
  for (int k = 0; k < 4; ++k) {
    const double rho = (var_source == VariableSource::analytic)
                           ? torus->signed_distance(mesh.vertices[v[k]])
                           : rho_h->values[v[k]];
    lo = std::min(lo, rho);
    hi = std::max(hi, rho);
  }
  return lo <= halfwidth && hi >= -halfwidth;
}

DiscreteGeometry make_analytic_geometry(const TorusGeometry& torus,
                                        const InterfaceProfile& profile) {
  DiscreteGeometry g;
  g.torus = &torus;
  g.profile = profile;
  profile.validate_for(torus);
  return g;
}

DiscreteGeometry make_sampled_geometry(const TetMesh& mesh, const TorusGeometry& torus,
                                       const InterfaceProfile& profile,
                                       const SignedDistanceFn& sdf, NormalSource normal_source,
                                       PhiEvaluation phi_eval, bool recovered_gradients) {
  DiscreteGeometry g;
  g.torus = &torus;
  g.profile = profile;
  profile.validate_for(torus);
  g.var_source = VariableSource::sampled;
  g.phi_eval = phi_eval;
  g.normal_source = normal_source;
  g.recovered_gradients = recovered_gradients;

  NodalGeometryFields fields = sample_nodal_fields(sdf, mesh, profile);
  g.rho_h.emplace(std::move(fields.rho));
  g.phi_h.emplace(std::move(fields.phi));
  g.grad_rho_rec.emplace(recover_nodal_gradient(*g.rho_h));
  g.grad_phi_rec.emplace(recover_nodal_gradient(*g.phi_h));

  if (normal_source != NormalSource::analytic && recovered_gradients) {
    const VectorField& grad =
        (normal_source == NormalSource::grad_rho) ? *g.grad_rho_rec : *g.grad_phi_rec;
    const double sign = (normal_source == NormalSource::grad_phi) ? -1.0 : 1.0;
    VectorField nu(mesh);
    for (std::size_t i = 0; i < nu.values.size(); ++i) {
      const Vec3 v = grad.values[i] * sign;
      const double len = norm(v);
      // far-field nodes keep a zero normal; the weight cutoff keeps them
      // out of every band integral
      nu.values[i] = (len >= 1e-8) ? v / len : Vec3{};
    }
    g.nu_nodal.emplace(std::move(nu));
  }
  return g;
}

}  // namespace difem
