/* dispersia: ground-state dispersive forces (atom-wall, wall-wall,
 * atom-atom, voxelized bodies) computed from imaginary-frequency response.
 *
 * C interface over the C++ core.  All numerical entry points work in
 * natural units (hbar = c = eps0 = mu0 = 1): lengths and polarizabilities
 * are volumes in the chosen length unit, frequencies are inverse lengths,
 * forces come out as [hbar * c / length^2].  The scenario pipeline
 * (dsp_scenario_*) performs SI conversion as declared in the scenario file.
 *
 * Every function returns a dsp_status; on failure dsp_last_error() gives a
 * thread-local human-readable message.  Handles are freed with the matching
 * *_free function; passing NULL to a *_free is a no-op.
 */
#ifndef DISPERSIA_H
#define DISPERSIA_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dsp_status {
  DSP_OK = 0,
  DSP_ERR_NULL_ARGUMENT = 1,
  DSP_ERR_INVALID_ARGUMENT = 2,
  DSP_ERR_CAUSALITY = 3,        /* local-field passivity gate violated */
  DSP_ERR_QUADRATURE = 4,
  DSP_ERR_SINGULAR_SYSTEM = 5,  /* near-singular dense voxel solve */
  DSP_ERR_SEPARATION = 6,       /* bodies closer than 3 x voxel pitch */
  DSP_ERR_PARSE = 7,
  DSP_ERR_VALIDATION = 8,
  DSP_ERR_IO = 9,
  DSP_ERR_INTERNAL = 10
} dsp_status;

const char* dsp_version(void);
/* Message for the most recent failure on this thread ("" if none). */
const char* dsp_last_error(void);

typedef struct dsp_polarizability dsp_polarizability;
typedef struct dsp_material dsp_material;
typedef struct dsp_susceptibility dsp_susceptibility;
typedef struct dsp_stack dsp_stack;
typedef struct dsp_provider dsp_provider;
typedef struct dsp_body dsp_body;
typedef struct dsp_scenario dsp_scenario;

/* ---------------------------------------------------------- response models
 * Oscillator polarizability  alpha(i xi) = scale * sum_k W_k^2 / (w_k^2 +
 * xi^2 + g_k xi); scale is the static volume when W_k = w_k.  `gammas` may
 * be NULL (all zero). */
dsp_status dsp_polarizability_create(double scale, const double* couplings,
                                     const double* resonances,
                                     const double* gammas, size_t n_terms,
                                     dsp_polarizability** out);
dsp_status dsp_polarizability_eval(const dsp_polarizability* a, double xi,
                                   double* out_alpha);
void dsp_polarizability_free(dsp_polarizability* a);

/* Drude-Lorentz permittivity eps(i xi) = 1 + sum_k wp_k^2/(w0_k^2 + xi^2 +
 * g_k xi); optional permeability terms of the same form (pass n_mu = 0 for
 * mu = 1).  gamma arrays may be NULL. */
dsp_status dsp_material_lorentz(const char* label, const double* eps_wp,
                                const double* eps_w0, const double* eps_gamma,
                                size_t n_eps, const double* mu_wp,
                                const double* mu_w0, const double* mu_gamma,
                                size_t n_mu, dsp_material** out);
/* Monotone-interpolated tabulated eps(i xi) (held below the first node,
 * 1/xi^2 tail above the last). */
dsp_status dsp_material_table(const char* label, const double* xi,
                              const double* eps, size_t n, dsp_material** out);
dsp_status dsp_material_mirror(dsp_material** out);
dsp_status dsp_material_eval(const dsp_material* m, double xi, double* out_eps,
                             double* out_mu);
void dsp_material_free(dsp_material* m);

/* Local-field susceptibility chi = y/(1 - y/3), y = eta * alpha; fails with
 * DSP_ERR_CAUSALITY when eta*alpha(0)/3 >= 1. */
dsp_status dsp_susceptibility_local_field(double eta,
                                          const dsp_polarizability* alpha,
                                          dsp_susceptibility** out);
dsp_status dsp_susceptibility_direct(const double* amplitudes,
                                     const double* resonances,
                                     const double* gammas, size_t n_terms,
                                     double scale, dsp_susceptibility** out);
dsp_status dsp_susceptibility_eval(const dsp_susceptibility* s, double xi,
                                   double* out_chi);
void dsp_susceptibility_free(dsp_susceptibility* s);

/* ------------------------------------------------------------ planar stacks
 * The wall fills z <= 0; the evaluation region z > 0 is vacuum. */
dsp_status dsp_stack_mirror(dsp_stack** out);
dsp_status dsp_stack_half_space(const dsp_material* m, dsp_stack** out);
/* One film of the given thickness on a substrate; NULL substrate = mirror. */
dsp_status dsp_stack_film(const dsp_material* film, double thickness,
                          const dsp_material* substrate, dsp_stack** out);
/* Composed s/p reflection amplitudes at vacuum-side decay constant
 * kappa >= xi. */
dsp_status dsp_stack_reflection(const dsp_stack* s, double xi, double kappa,
                                double* out_rs, double* out_rp);
void dsp_stack_free(dsp_stack* s);

/* --------------------------------------------------------- Green providers */
dsp_status dsp_provider_free_space(dsp_provider** out);
dsp_status dsp_provider_bulk(const dsp_material* medium, dsp_provider** out);
dsp_status dsp_provider_planar(const dsp_stack* stack, double rel_tol,
                               dsp_provider** out);
/* Full 3x3 tensor between distinct points, row-major in out_tensor. */
dsp_status dsp_provider_eval(const dsp_provider* p, const double r1[3],
                             const double r2[3], double xi,
                             double out_tensor[9]);
/* Trace of the coincident scattering part at r. */
dsp_status dsp_provider_scattering_trace(const dsp_provider* p,
                                         const double r[3], double xi,
                                         double* out_trace);
void dsp_provider_free(dsp_provider* p);

/* ------------------------------------------------------------------- forces
 * All force outputs: out_force[3] (z is the wall normal), err = integration
 * error estimate, converged = 1/0. */
dsp_status dsp_cp_force_atom(const dsp_polarizability* alpha,
                             const dsp_stack* stack, double z, double rel_tol,
                             double out_force[3], double* out_err,
                             int* out_converged);
dsp_status dsp_cp_force_medium_atom(const dsp_polarizability* alpha,
                                    double eta, const dsp_stack* stack,
                                    double z, double rel_tol,
                                    double out_force[3], double* out_err,
                                    int* out_converged);
/* shape: 0 isolated, 1 embedded; weak: nonzero replaces the local-field
 * weight by the bare superposition weight. */
dsp_status dsp_micro_object_force(const dsp_susceptibility* chi, double volume,
                                  int shape, int weak, const dsp_stack* stack,
                                  double z, double rel_tol,
                                  double out_force[3], double* out_err,
                                  int* out_converged);
dsp_status dsp_lifshitz_pressure(const dsp_stack* left, double d,
                                 const dsp_stack* right, double rel_tol,
                                 double* out_pressure, double* out_err,
                                 int* out_converged);
dsp_status dsp_vdw_force(const dsp_polarizability* a1,
                         const dsp_polarizability* a2, const dsp_provider* env,
                         const double r1[3], const double r2[3],
                         double rel_tol, double out_force[3], double* out_err,
                         int* out_converged);
dsp_status dsp_vdw_c6(const dsp_polarizability* a1,
                      const dsp_polarizability* a2, double rel_tol,
                      double* out_c6);

/* ----------------------------------------------------------- voxel bodies */
dsp_status dsp_body_create(const dsp_susceptibility* chi,
                           const double* centers_xyz, size_t n_voxels,
                           double pitch, dsp_body** out);
dsp_status dsp_body_box(const dsp_susceptibility* chi, const double center[3],
                        const int counts[3], double pitch, dsp_body** out);
dsp_status dsp_body_sphere(const dsp_susceptibility* chi,
                           const double center[3], double radius, double pitch,
                           dsp_body** out);
/* exact: nonzero solves the dense multiple-scattering system; zero uses the
 * single-scattering (superposition) force. */
dsp_status dsp_body_force(const dsp_provider* host, const dsp_body* body,
                          int exact, double rel_tol, double out_force[3],
                          double* out_err, int* out_converged);
dsp_status dsp_crossing_force(const dsp_provider* host, const dsp_body* body1,
                              const dsp_body* body2, double rel_tol,
                              double out_force[3], double* out_err,
                              int* out_converged);
/* Solves the dense system at one frequency and reports the worst relative
 * reciprocity violation over all voxel-pair blocks. */
dsp_status dsp_dyson_reciprocity(const dsp_provider* host,
                                 const dsp_body* body, double xi,
                                 double* out_max_asymmetry);
void dsp_body_free(dsp_body* b);

/* -------------------------------------------------------- scenario pipeline */
dsp_status dsp_scenario_parse(const char* text, dsp_scenario** out);
dsp_status dsp_scenario_set_rel_tol(dsp_scenario* s, double rel_tol);
/* si: nonzero = SI output, zero = natural output (input units unchanged). */
dsp_status dsp_scenario_set_output_units(dsp_scenario* s, int si);
/* Runs the sweep and returns the CSV text (free with dsp_string_free);
 * all_converged is 1 only if every row converged. */
dsp_status dsp_scenario_run_csv(const dsp_scenario* s, char** out_csv,
                                int* out_all_converged);
dsp_status dsp_scenario_limits_text(const dsp_scenario* s, char** out_text);
void dsp_scenario_free(dsp_scenario* s);
void dsp_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* DISPERSIA_H */
