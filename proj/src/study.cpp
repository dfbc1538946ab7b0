#include "difem/study.hpp"

#include "difem/vtk.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace difem {
namespace {

constexpr double kBoxExtent = 2.0;
constexpr double kBaseH = 0.5;  // coarse cube size before band refinement

double elapsed_seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Signed-distance source plus whatever owns it (surface mesh + BVH for the
// sampled-mesh pipeline).
SignedDistanceFn make_sdf(StudyVariableSource source, const TorusGeometry& torus, double h) {
  if (source == StudyVariableSource::sampled_mesh) {
    auto tri = std::make_shared<SurfaceTriangulation>(triangulate_torus(torus, h / 4.0));
    auto bvh = std::make_shared<TriangleBvh>(*tri);
    return [tri, bvh](const Vec3& p) { return bvh->signed_distance(p); };
  }
  return [&torus](const Vec3& p) { return torus.signed_distance(p); };
}

const char* variable_source_name(StudyVariableSource s) {
  switch (s) {
    case StudyVariableSource::analytic: return "analytic";
    case StudyVariableSource::sampled_analytic: return "sampled-analytic";
    default: return "sampled-mesh";
  }
}

const char* normal_source_name(NormalSource s) {
  switch (s) {
    case NormalSource::analytic: return "analytic";
    case NormalSource::grad_rho: return "A";
    default: return "B";
  }
}

TetMesh build_band_mesh(const InterfaceProfile& profile, const SignedDistanceFn& sdf, double h) {
  TetMesh mesh = build_box_mesh({-kBoxExtent, -kBoxExtent, -kBoxExtent},
                                {kBoxExtent, kBoxExtent, kBoxExtent}, kBaseH);
  refine_to_band(mesh, RefinementBand(profile, sdf, h));
  return mesh;
}

struct LadderPoint {
  double h;
  double epsilon;
};

std::vector<LadderPoint> valid_ladder(const StudyConfig& cfg, const RelationSpec& rel,
                                      const TorusGeometry& torus, const char* experiment) {
  std::vector<LadderPoint> pts;
  for (double h : cfg.ladder()) {
    if (!rel.valid_for(h, torus)) {
      std::cerr << experiment << " p=" << rel.p << ": skipping h=" << h
                << " (eps*kappa_max >= 1 invalidates the extension)\n";
      continue;
    }
    pts.push_back({h, rel.epsilon_of(h)});
  }
  return pts;
}

void maybe_export_vtk(const StudyConfig& cfg, const ExperimentRecord& rec, const TetMesh& mesh,
                      const DiscreteGeometry& geom, const VectorField* u_h) {
  if (!cfg.export_vtk) return;
  std::filesystem::create_directories(cfg.outdir);
  std::ostringstream name;
  name << experiment_name(rec.experiment) << "_p" << rec.relation_p << "_h" << rec.h << "_"
       << rec.normal_source << ".vtk";
  std::vector<std::pair<std::string, const ScalarField*>> scalars;
  std::vector<std::pair<std::string, const VectorField*>> vectors;
  if (geom.rho_h) scalars.push_back({"rho_h", &*geom.rho_h});
  if (geom.phi_h) scalars.push_back({"phi_h", &*geom.phi_h});
  if (geom.grad_rho_rec) vectors.push_back({"grad_rho_h", &*geom.grad_rho_rec});
  if (u_h) vectors.push_back({"u_h", u_h});
  write_vtk((std::filesystem::path(cfg.outdir) / name.str()).string(), mesh, scalars, vectors);
}

StudyVariableSource sampled_source(const StudyConfig& cfg) {
  // E1/E3 always sample; plain "analytic" falls back to the analytic sdf
  return cfg.variable_source == StudyVariableSource::sampled_mesh
             ? StudyVariableSource::sampled_mesh
             : StudyVariableSource::sampled_analytic;
}

}  // namespace

double RelationSpec::epsilon_of(double h) const {
  if (!(h > 0.0)) throw std::invalid_argument("RelationSpec: h must be positive");
  return anchor_eps * std::pow(h / anchor_h, 2.0 / p);
}

bool RelationSpec::valid_for(double h, const TorusGeometry& torus) const {
  return epsilon_of(h) * torus.curvature_bound() < 1.0;
}

std::vector<double> StudyConfig::ladder() const {
  if (!(h_min > 0.0 && h_min <= h_max))
    throw std::invalid_argument("StudyConfig: need 0 < h_min <= h_max");
  std::vector<double> hs;
  for (double h = h_max; h >= h_min * (1.0 - 1e-12); h *= 0.5) hs.push_back(h);
  return hs;
}

const char* experiment_name(ExperimentId id) {
  switch (id) {
    case ExperimentId::e1: return "E1";
    case ExperimentId::e2: return "E2";
    default: return "E3";
  }
}

std::vector<ExperimentRecord> run_experiment_e1(const StudyConfig& cfg) {
  TorusGeometry torus;
  const StudyVariableSource source = sampled_source(cfg);
  std::vector<ExperimentRecord> records;
  for (int p : cfg.relations) {
    const RelationSpec rel{p, cfg.anchor_h, cfg.anchor_eps};
    for (const LadderPoint& pt : valid_ladder(cfg, rel, torus, "E1")) {
      const auto t0 = std::chrono::steady_clock::now();
      const InterfaceProfile profile(pt.epsilon);
      const SignedDistanceFn sdf = make_sdf(source, torus, pt.h);
      const TetMesh mesh = build_band_mesh(profile, sdf, pt.h);
      const DiscreteGeometry geom = make_sampled_geometry(mesh, torus, profile, sdf,
                                                          NormalSource::grad_rho, cfg.phi_eval);
      ExperimentRecord rec;
      rec.experiment = ExperimentId::e1;
      rec.relation_p = p;
      rec.h = pt.h;
      rec.epsilon = pt.epsilon;
      rec.normal_source = "-";
      rec.variable_source = variable_source_name(source);
      rec.errors.rho = err_rho(mesh, geom);
      rec.errors.phi = err_phi(mesh, geom);
      rec.errors.nu_A = err_nu_A(mesh, geom);
      rec.errors.nu_B = err_nu_B(mesh, geom);
      rec.dofs = mesh.vertex_count();
      rec.seconds = elapsed_seconds(t0);
      maybe_export_vtk(cfg, rec, mesh, geom, nullptr);
      records.push_back(std::move(rec));
    }
  }
  return records;
}

std::vector<ExperimentRecord> run_experiment_e2(const StudyConfig& cfg) {
  TorusGeometry torus;
  std::vector<ExperimentRecord> records;
  for (int p : cfg.relations) {
    const RelationSpec rel{p, cfg.anchor_h, cfg.anchor_eps};
    for (const LadderPoint& pt : valid_ladder(cfg, rel, torus, "E2")) {
      const auto t0 = std::chrono::steady_clock::now();
      const InterfaceProfile profile(pt.epsilon);
      const SignedDistanceFn sdf = [&torus](const Vec3& x) { return torus.signed_distance(x); };
      const TetMesh mesh = build_band_mesh(profile, sdf, pt.h);
      const DiscreteGeometry geom = make_analytic_geometry(torus, profile);
      DiffuseProblemConfig pc;
      pc.h = pt.h;
      pc.c_pen = cfg.c_pen;
      pc.delta = cfg.delta;
      pc.tol = cfg.tol;
      const HelmholtzSolution sol = solve_problem(mesh, geom, pc);
      ExperimentRecord rec;
      rec.experiment = ExperimentId::e2;
      rec.relation_p = p;
      rec.h = pt.h;
      rec.epsilon = pt.epsilon;
      rec.normal_source = "analytic";
      rec.variable_source = "analytic";
      rec.errors.u = err_u(mesh, sol.u, torus, profile);
      rec.errors.un = normal_component_error(mesh, sol.u, torus, profile);
      rec.dofs = sol.dofs;
      rec.iterations = sol.stats.iterations;
      rec.seconds = elapsed_seconds(t0);
      maybe_export_vtk(cfg, rec, mesh, geom, &sol.u);
      records.push_back(std::move(rec));
    }
  }
  return records;
}

std::vector<ExperimentRecord> run_experiment_e3(const StudyConfig& cfg) {
  TorusGeometry torus;
  const StudyVariableSource source = sampled_source(cfg);
  std::vector<ExperimentRecord> records;
  for (int p : cfg.relations) {
    const RelationSpec rel{p, cfg.anchor_h, cfg.anchor_eps};
    for (const LadderPoint& pt : valid_ladder(cfg, rel, torus, "E3")) {
      const auto t0 = std::chrono::steady_clock::now();
      const InterfaceProfile profile(pt.epsilon);
      const SignedDistanceFn sdf = make_sdf(source, torus, pt.h);
      const TetMesh mesh = build_band_mesh(profile, sdf, pt.h);
      const DiscreteGeometry geom =
          make_sampled_geometry(mesh, torus, profile, sdf, cfg.normal_source, cfg.phi_eval);
      DiffuseProblemConfig pc;
      pc.h = pt.h;
      pc.c_pen = cfg.c_pen;
      pc.delta = cfg.delta;
      pc.tol = cfg.tol;
      const HelmholtzSolution sol = solve_problem(mesh, geom, pc);
      ExperimentRecord rec;
      rec.experiment = ExperimentId::e3;
      rec.relation_p = p;
      rec.h = pt.h;
      rec.epsilon = pt.epsilon;
      rec.normal_source = normal_source_name(cfg.normal_source);
      rec.variable_source = variable_source_name(source);
      rec.errors.rho = err_rho(mesh, geom);
      rec.errors.phi = err_phi(mesh, geom);
      rec.errors.nu_A = err_nu_A(mesh, geom);
      rec.errors.nu_B = err_nu_B(mesh, geom);
      rec.errors.u = err_u(mesh, sol.u, torus, profile);
      rec.errors.un = normal_component_error(mesh, sol.u, torus, profile);
      rec.dofs = sol.dofs;
      rec.iterations = sol.stats.iterations;
      rec.seconds = elapsed_seconds(t0);
      maybe_export_vtk(cfg, rec, mesh, geom, &sol.u);
      records.push_back(std::move(rec));
    }
  }
  return records;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<int> parse_relations(const std::string& value) {
  if (value == "all") return {2, 3, 4, 5};
  std::vector<int> ps;
  std::stringstream ss(value);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const int p = std::stoi(trim(tok));
    if (p < 2 || p > 5) throw std::invalid_argument("relation p must be in {2,3,4,5}");
    ps.push_back(p);
  }
  if (ps.empty()) throw std::invalid_argument("relation list is empty");
  return ps;
}

}  // namespace

void apply_config_line(StudyConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "relation") cfg.relations = parse_relations(value);
  else if (key == "h_min") cfg.h_min = std::stod(value);
  else if (key == "h_max") cfg.h_max = std::stod(value);
  else if (key == "anchor_h") cfg.anchor_h = std::stod(value);
  else if (key == "anchor_eps") cfg.anchor_eps = std::stod(value);
  else if (key == "cpen") cfg.c_pen = std::stod(value);
  else if (key == "delta") cfg.delta = std::stod(value);
  else if (key == "tol") cfg.tol = std::stod(value);
  else if (key == "outdir") cfg.outdir = value;
  else if (key == "export_vtk") cfg.export_vtk = (value == "1" || value == "true" || value == "yes");
  else if (key == "threads") cfg.threads = std::stoi(value);
  else if (key == "normal_source") {
    if (value == "analytic") cfg.normal_source = NormalSource::analytic;
    else if (value == "A") cfg.normal_source = NormalSource::grad_rho;
    else if (value == "B") cfg.normal_source = NormalSource::grad_phi;
    else throw std::invalid_argument("normal_source must be analytic, A or B");
  } else if (key == "variable_source") {
    if (value == "analytic") cfg.variable_source = StudyVariableSource::analytic;
    else if (value == "sampled-analytic") cfg.variable_source = StudyVariableSource::sampled_analytic;
    else if (value == "sampled-mesh") cfg.variable_source = StudyVariableSource::sampled_mesh;
    else throw std::invalid_argument("variable_source must be analytic, sampled-analytic or sampled-mesh");
  } else if (key == "phi_eval") {
    if (value == "profile") cfg.phi_eval = PhiEvaluation::profile_of_rho;
    else if (value == "nodal") cfg.phi_eval = PhiEvaluation::nodal;
    else throw std::invalid_argument("phi_eval must be profile or nodal");
  } else {
    throw std::invalid_argument("unknown config key: " + key);
  }
}

void apply_config_file(StudyConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
    apply_config_line(cfg, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
  }
}

}  // namespace difem
