// difem-study: run the convergence experiments and write result reports.
// Talks to the library exclusively through the C API.

#include <CLI11.hpp>
#include <difem.h>

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace {

struct Options {
  std::string config;
  std::string relation;
  std::string h_min, h_max;
  std::string normal_source, variable_source;
  std::string anchor_h, anchor_eps;
  std::string cpen, delta, tol;
  std::string outdir;
  bool export_vtk = false;
  std::string threads;
};

int fail(difem_study* study, const char* what, difem_status rc) {
  std::fprintf(stderr, "difem-study: %s failed: %s (%s)\n", what,
               difem_study_last_error(study), difem_status_string(rc));
  difem_study_destroy(study);
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diffuse-interface surface-PDE convergence studies on the torus"};
  app.require_subcommand(1);

  Options opt;
  std::vector<std::string> experiments;
  for (const char* name : {"e1", "e2", "e3", "all"}) {
    CLI::App* sub = app.add_subcommand(
        name, name[0] == 'a' ? "run all three experiments" :
              name[1] == '1' ? "variable and normal errors, no solve" :
              name[1] == '2' ? "solve with analytic diffuse variables"
                             : "solve with sampled variables and discrete normals");
    sub->fallthrough();
    sub->callback([&experiments, name] { experiments.push_back(name); });
  }

  app.add_option("--config", opt.config, "key = value config file; flags override it");
  app.add_option("--relation", opt.relation, "(h,eps) relation exponent: 2, 3, 4, 5, list, or all");
  app.add_option("--h-min", opt.h_min, "finest ladder h");
  app.add_option("--h-max", opt.h_max, "coarsest ladder h");
  app.add_option("--normal-source", opt.normal_source, "analytic, A (grad rho_h), B (-grad phi_h)");
  app.add_option("--variable-source", opt.variable_source,
                 "analytic, sampled-analytic, sampled-mesh");
  app.add_option("--anchor-h", opt.anchor_h, "relation anchor h0");
  app.add_option("--anchor-eps", opt.anchor_eps, "relation anchor eps0");
  app.add_option("--cpen", opt.cpen, "normal penalty constant C_N = cpen/h^2");
  app.add_option("--delta", opt.delta, "bulk regularization");
  app.add_option("--tol", opt.tol, "solver relative-residual tolerance");
  app.add_option("--outdir", opt.outdir, "report output directory");
  app.add_flag("--export-vtk", opt.export_vtk, "dump per-run VTK meshes");
  app.add_option("--threads", opt.threads, "accepted for compatibility; runs are serial");

  CLI11_PARSE(app, argc, argv);

  difem_study* study = difem_study_create();
  if (!study) {
    std::fprintf(stderr, "difem-study: out of memory\n");
    return 1;
  }

  if (!opt.config.empty()) {
    const difem_status rc = difem_study_load_config(study, opt.config.c_str());
    if (rc != DIFEM_OK) return fail(study, "loading config", rc);
  }

  const std::pair<const char*, const std::string*> keyed[] = {
      {"relation", &opt.relation},       {"h_min", &opt.h_min},
      {"h_max", &opt.h_max},             {"normal_source", &opt.normal_source},
      {"variable_source", &opt.variable_source}, {"anchor_h", &opt.anchor_h},
      {"anchor_eps", &opt.anchor_eps},   {"cpen", &opt.cpen},
      {"delta", &opt.delta},             {"tol", &opt.tol},
      {"outdir", &opt.outdir},           {"threads", &opt.threads},
  };
  for (const auto& [key, value] : keyed) {
    if (value->empty()) continue;
    const difem_status rc = difem_study_set(study, key, value->c_str());
    if (rc != DIFEM_OK) return fail(study, key, rc);
  }
  if (opt.export_vtk) {
    const difem_status rc = difem_study_set(study, "export_vtk", "true");
    if (rc != DIFEM_OK) return fail(study, "export_vtk", rc);
  }

  for (const std::string& exp : experiments) {
    const difem_status rc = difem_study_run(study, exp.c_str());
    if (rc != DIFEM_OK) return fail(study, exp.c_str(), rc);
  }

  const difem_status rc = difem_study_write_reports(study, nullptr);
  if (rc != DIFEM_OK) return fail(study, "writing reports", rc);

  std::printf("difem-study: wrote %zu records\n", difem_study_record_count(study));
  difem_study_destroy(study);
  return 0;
}
