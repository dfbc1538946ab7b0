/* difem: diffuse-interface FEM studies for tangential surface PDEs on an
 * implicit torus. C interface to the shared library; all state lives behind
 * opaque handles and every fallible call returns a difem_status. */
#ifndef DIFEM_H
#define DIFEM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  DIFEM_OK = 0,
  DIFEM_ERR_NULL_HANDLE = 1,
  DIFEM_ERR_INVALID_ARGUMENT = 2,
  DIFEM_ERR_IO = 3,
  DIFEM_ERR_SOLVER = 4,
  DIFEM_ERR_INTERNAL = 5
} difem_status;

const char* difem_version(void);
const char* difem_status_string(difem_status s);

/* Stateless evaluators for the benchmark geometry (torus R=1, r=0.5). */
double difem_torus_signed_distance(double x, double y, double z);
/* Double-well surface-delta weight W at signed distance rho, width eps. */
double difem_well_weight(double eps, double rho);

/* A study accumulates experiment records under one configuration. */
typedef struct difem_study difem_study;

difem_study* difem_study_create(void);
void difem_study_destroy(difem_study* s);

/* Keys mirror the config file / CLI: relation, h_min, h_max, anchor_h,
 * anchor_eps, normal_source, variable_source, phi_eval, cpen, delta, tol,
 * outdir, export_vtk, threads. */
difem_status difem_study_set(difem_study* s, const char* key, const char* value);
difem_status difem_study_load_config(difem_study* s, const char* path);

/* experiment: "e1", "e2", "e3" or "all". Records append across calls. */
difem_status difem_study_run(difem_study* s, const char* experiment);
size_t difem_study_record_count(const difem_study* s);

/* Writes results.csv/.json, gnuplot data files and the order summary.
 * outdir may be NULL to use the configured one. */
difem_status difem_study_write_reports(difem_study* s, const char* outdir);

/* Message of the last failed call on this handle; empty string if none. */
const char* difem_study_last_error(const difem_study* s);

#ifdef __cplusplus
}
#endif

#endif /* DIFEM_H */
