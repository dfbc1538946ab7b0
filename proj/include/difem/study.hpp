#pragma once

#include "difem/bvh.hpp"
#include "difem/helmholtz.hpp"
#include "difem/metrics.hpp"
#include "difem/refine.hpp"

#include <string>
#include <vector>

namespace difem {

// (h, eps) coupling along a refinement ladder: eps(h) = eps0 * (h/h0)^{2/p}.
// p = 2 is the linear relation, p >= 3 the higher-order ones.
struct RelationSpec {
  int p = 2;
  double anchor_h = 0.25;
  double anchor_eps = 0.4;

  double epsilon_of(double h) const;
  // eps(h) * kappa_max < 1 for the closest-point extension to be valid
  bool valid_for(double h, const TorusGeometry& torus) const;
};

enum class ExperimentId { e1, e2, e3 };

// Where the diffuse-interface variables come from in a run.
enum class StudyVariableSource { analytic, sampled_analytic, sampled_mesh };

struct StudyConfig {
  std::vector<int> relations = {2, 3, 4, 5};
  double h_min = 1.0 / 64.0;
  double h_max = 0.25;
  double anchor_h = 0.25;
  double anchor_eps = 0.4;
  NormalSource normal_source = NormalSource::grad_rho;  // E3 discrete method
  StudyVariableSource variable_source = StudyVariableSource::sampled_analytic;
  PhiEvaluation phi_eval = PhiEvaluation::profile_of_rho;
  double c_pen = 10.0;
  double delta = 1e-6;
  double tol = 1e-10;
  std::string outdir = "results";
  bool export_vtk = false;
  int threads = 1;  // accepted for interface symmetry; runs are serial

  // Ladder of h = h_max, h_max/2, ... down to h_min.
  std::vector<double> ladder() const;
};

struct ExperimentRecord {
  ExperimentId experiment = ExperimentId::e1;
  int relation_p = 2;
  double h = 0.0;
  double epsilon = 0.0;
  std::string normal_source;    // "analytic", "A", "B", or "-"
  std::string variable_source;  // "analytic", "sampled-analytic", "sampled-mesh"
  ErrorReport errors;
  std::size_t dofs = 0;
  int iterations = 0;
  double seconds = 0.0;
};

// E1: sample rho_h, phi_h on the band mesh and measure variable and normal
// errors for both discrete normal methods. No solve.
std::vector<ExperimentRecord> run_experiment_e1(const StudyConfig& cfg);
// E2: solve the diffuse system with fully analytic variables.
std::vector<ExperimentRecord> run_experiment_e2(const StudyConfig& cfg);
// E3: solve with sampled variables and the configured discrete normal.
std::vector<ExperimentRecord> run_experiment_e3(const StudyConfig& cfg);

// results.csv + results.json + gnuplot data files + convergence summary.
void emit_report(const std::vector<ExperimentRecord>& records, const std::string& outdir);

// Flat key = value config text; '#' starts a comment. Unknown keys are errors.
void apply_config_line(StudyConfig& cfg, const std::string& key, const std::string& value);
void apply_config_file(StudyConfig& cfg, const std::string& path);

const char* experiment_name(ExperimentId id);

}  // namespace difem
