#include "difem.h"

#include "difem/solver.hpp"
#include "difem/study.hpp"

#include <exception>
#include <string>
#include <vector>

struct difem_study {
  difem::StudyConfig cfg;
  std::vector<difem::ExperimentRecord> records;
  std::string last_error;
};

namespace {

template <typename Fn>
difem_status guarded(difem_study* s, Fn&& fn) {
  if (!s) return DIFEM_ERR_NULL_HANDLE;
  try {
    fn();
    s->last_error.clear();
    return DIFEM_OK;
  } catch (const difem::SolverDiverged& e) {
    s->last_error = e.what();
    return DIFEM_ERR_SOLVER;
  } catch (const std::invalid_argument& e) {
    s->last_error = e.what();
    return DIFEM_ERR_INVALID_ARGUMENT;
  } catch (const std::domain_error& e) {
    s->last_error = e.what();
    return DIFEM_ERR_INVALID_ARGUMENT;
  } catch (const std::runtime_error& e) {
    s->last_error = e.what();
    return DIFEM_ERR_IO;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return DIFEM_ERR_INTERNAL;
  } catch (...) {
    s->last_error = "unknown error";
    return DIFEM_ERR_INTERNAL;
  }
}

void append(std::vector<difem::ExperimentRecord>& dst, std::vector<difem::ExperimentRecord> src) {
  dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
}

}  // namespace

extern "C" {

const char* difem_version(void) { return "1.0.0"; }

const char* difem_status_string(difem_status s) {
  switch (s) {
    case DIFEM_OK: return "ok";
    case DIFEM_ERR_NULL_HANDLE: return "null handle";
    case DIFEM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case DIFEM_ERR_IO: return "i/o error";
    case DIFEM_ERR_SOLVER: return "solver failure";
    default: return "internal error";
  }
}

double difem_torus_signed_distance(double x, double y, double z) {
  return difem::TorusGeometry{}.signed_distance({x, y, z});
}

double difem_well_weight(double eps, double rho) {
  return difem::InterfaceProfile(eps).well_of_rho(rho);
}

difem_study* difem_study_create(void) { return new (std::nothrow) difem_study; }

void difem_study_destroy(difem_study* s) { delete s; }

difem_status difem_study_set(difem_study* s, const char* key, const char* value) {
  return guarded(s, [&] {
    if (!key || !value) throw std::invalid_argument("difem_study_set: null key or value");
    difem::apply_config_line(s->cfg, key, value);
  });
}

difem_status difem_study_load_config(difem_study* s, const char* path) {
  return guarded(s, [&] {
    if (!path) throw std::invalid_argument("difem_study_load_config: null path");
    difem::apply_config_file(s->cfg, path);
  });
}

difem_status difem_study_run(difem_study* s, const char* experiment) {
  return guarded(s, [&] {
    if (!experiment) throw std::invalid_argument("difem_study_run: null experiment");
    const std::string id(experiment);
    if (id == "e1") append(s->records, difem::run_experiment_e1(s->cfg));
    else if (id == "e2") append(s->records, difem::run_experiment_e2(s->cfg));
    else if (id == "e3") append(s->records, difem::run_experiment_e3(s->cfg));
    else if (id == "all") {
      append(s->records, difem::run_experiment_e1(s->cfg));
      append(s->records, difem::run_experiment_e2(s->cfg));
      append(s->records, difem::run_experiment_e3(s->cfg));
    } else {
      throw std::invalid_argument("difem_study_run: experiment must be e1, e2, e3 or all");
    }
  });
}

size_t difem_study_record_count(const difem_study* s) { return s ? s->records.size() : 0; }

difem_status difem_study_write_reports(difem_study* s, const char* outdir) {
  return guarded(s, [&] {
    difem::emit_report(s->records, outdir ? std::string(outdir) : s->cfg.outdir);
  });
}

const char* difem_study_last_error(const difem_study* s) {
  return s ? s->last_error.c_str() : "null handle";
}

}  // extern "C"
