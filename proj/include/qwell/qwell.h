/* Copyright 2026 The qwell Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#ifndef QWELL_QWELL_H_
#define QWELL_QWELL_H_

/*
 * C interface to the qwell solver library.
 *
 * Every fallible call returns a qwell_status. On failure the calling thread's
 * last-error message (qwell_last_error) describes the problem; it stays valid
 * until the next failing call on the same thread. Handles are opaque and
 * released with the matching *_free function; passing NULL to a free
 * function is a no-op. Strings returned through char** are owned by the
 * caller and released with qwell_string_free.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(QWELL_BUILDING_LIBRARY)
#define QWELL_API __attribute__((visibility("default")))
#else
#define QWELL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qwell_status {
  QWELL_OK = 0,
  QWELL_ERR_CONFIG = 2,            /* invalid argument, config or request */
  QWELL_ERR_DIVERGED = 3,          /* non-finite loss during training */
  QWELL_ERR_INTERNAL = 4,          /* numerical routine failed */
  QWELL_ERR_ZERO_WAVEFUNCTION = 5  /* network output vanishes on the grid */
} qwell_status;

QWELL_API const char* qwell_last_error(void);
QWELL_API const char* qwell_version(void);
QWELL_API void qwell_string_free(char* s);

/* Caps worker threads for this process; 0 restores the QWELL_THREADS /
 * hardware default. Results do not depend on the thread count. */
QWELL_API void qwell_set_thread_limit(size_t threads);

/* ---- problems ---------------------------------------------------------- */

typedef struct qwell_problem qwell_problem;

typedef enum qwell_energy_mode {
  QWELL_ENERGY_FIXED = 0,
  QWELL_ENERGY_TRAINABLE = 1
} qwell_energy_mode;

typedef struct qwell_problem_info {
  double domain_a;
  double domain_b;
  qwell_energy_mode energy_mode;
  double energy_init;
  int n_collocation;
  size_t n_layers;          /* entries in the layer size list */
  size_t n_segments;        /* potential segments */
  double potential_default; /* value outside every segment */
} qwell_problem_info;

/* "infinite-well", "finite-well" or "barrier". */
QWELL_API qwell_status qwell_problem_preset(const char* name, qwell_problem** out);
/* Inline problem object: name, domain, envelope, potential, energy,
 * layer_sizes, n_collocation. */
QWELL_API qwell_status qwell_problem_from_json(const char* json, qwell_problem** out);
QWELL_API qwell_status qwell_problem_to_json(const qwell_problem* p, char** out);
QWELL_API qwell_status qwell_problem_clone(const qwell_problem* p, qwell_problem** out);
QWELL_API void qwell_problem_free(qwell_problem* p);

QWELL_API const char* qwell_problem_name(const qwell_problem* p);
QWELL_API qwell_status qwell_problem_get_info(const qwell_problem* p,
                                              qwell_problem_info* out);
QWELL_API qwell_status qwell_problem_layer_sizes(const qwell_problem* p,
                                                 int* out, size_t capacity);
QWELL_API double qwell_problem_potential(const qwell_problem* p, double x);
QWELL_API qwell_status qwell_problem_set_collocation(qwell_problem* p, int n);

/* Trial wavefunction psi = B * N of a freshly initialized network at x, with
 * its first and second derivatives. */
QWELL_API qwell_status qwell_problem_trial_at_init(const qwell_problem* p,
                                                   uint64_t seed, double x,
                                                   double out_jet[3]);

/* ---- training ---------------------------------------------------------- */

typedef enum qwell_init_scheme {
  QWELL_INIT_FAN_IN_UNIFORM = 0,
  QWELL_INIT_GLOROT_UNIFORM = 1
} qwell_init_scheme;

typedef struct qwell_training_config {
  int epochs;
  double learning_rate;
  double lambda_norm;
  uint64_t seed;
  int log_interval;
  double adam_beta1;
  double adam_beta2;
  double adam_epsilon;
  qwell_init_scheme init;
} qwell_training_config;

/* Defaults: 5000 epochs, lr 1e-3, lambda 1, seed 42, log every 500,
 * Adam (0.9, 0.999, 1e-8), fan-in uniform init. */
QWELL_API void qwell_training_config_init(qwell_training_config* cfg);
QWELL_API qwell_status qwell_training_config_validate(const qwell_training_config* cfg);
QWELL_API qwell_status qwell_training_config_to_json(const qwell_training_config* cfg,
                                                     char** out);

/* Parses a run config document. *problem receives a new handle,
 * *preset_name (may be NULL) the preset name or NULL for inline problems,
 * *output_dir (may be NULL) the output directory or NULL when absent. */
QWELL_API qwell_status qwell_run_config_parse(const char* json,
                                              qwell_problem** problem,
                                              qwell_training_config* training,
                                              char** preset_name,
                                              char** output_dir);

typedef struct qwell_record {
  int epoch;
  double energy;
  double l_pde;
  double l_norm;
  double total;
} qwell_record;

typedef struct qwell_diagnostics {
  double max_energy_step;
  int max_direction_changes;
} qwell_diagnostics;

typedef struct qwell_model qwell_model;

/* Trains from scratch. On QWELL_OK *out is a trained model. On
 * QWELL_ERR_DIVERGED *out is still set: it carries the records logged before
 * divergence (see qwell_model_last_good) but cannot be evaluated. */
QWELL_API qwell_status qwell_train(const qwell_problem* problem,
                                   const qwell_training_config* cfg,
                                   qwell_model** out);
QWELL_API void qwell_model_free(qwell_model* m);

QWELL_API int qwell_model_diverged(const qwell_model* m);
QWELL_API size_t qwell_model_history_size(const qwell_model* m);
QWELL_API qwell_status qwell_model_history(const qwell_model* m, qwell_record* out,
                                           size_t capacity);
QWELL_API qwell_status qwell_model_last_good(const qwell_model* m, qwell_record* out);
QWELL_API qwell_status qwell_model_energy(const qwell_model* m, double* out);
QWELL_API qwell_status qwell_model_diagnostics(const qwell_model* m,
                                               qwell_diagnostics* out);
QWELL_API size_t qwell_model_parameter_count(const qwell_model* m);

/* psi on an n-point uniform grid, unit trapezoid norm, positive at its
 * largest-magnitude entry. */
QWELL_API qwell_status qwell_model_sample(const qwell_model* m, size_t n, double* x,
                                          double* psi);

/* Loss of the model with the network output multiplied by `scale`, on the
 * training grid. */
QWELL_API qwell_status qwell_model_scaled_loss(const qwell_model* m, double scale,
                                               double lambda_norm, qwell_record* out);

/* ---- reference solvers ------------------------------------------------- */

typedef enum qwell_method {
  QWELL_METHOD_FD = 0,             /* finite differences on the domain */
  QWELL_METHOD_TRANSCENDENTAL = 1, /* even levels of a symmetric finite well */
  QWELL_METHOD_ANALYTIC = 2        /* infinite well on [0, 1] */
} qwell_method;

typedef struct qwell_reference_options {
  int points; /* fd: interior points; others: wavefunction samples */
  int count;  /* fd: eigenvalues to return */
  int level;  /* analytic: quantum number n of the reported state */
} qwell_reference_options;

/* Defaults: 1999 points, 3 eigenvalues, level 1. */
QWELL_API void qwell_reference_options_init(qwell_reference_options* opts);
QWELL_API qwell_status qwell_parse_method(const char* name, qwell_method* out);
QWELL_API const char* qwell_method_name(qwell_method method);

typedef struct qwell_oracle qwell_oracle;

/* Fails with QWELL_ERR_CONFIG when the method does not apply to the problem.
 * The wavefunction is that of the lowest returned level. */
QWELL_API qwell_status qwell_reference(const qwell_problem* problem,
                                       qwell_method method,
                                       const qwell_reference_options* opts,
                                       qwell_oracle** out);
QWELL_API void qwell_oracle_free(qwell_oracle* o);
QWELL_API size_t qwell_oracle_eigenvalue_count(const qwell_oracle* o);
QWELL_API qwell_status qwell_oracle_eigenvalues(const qwell_oracle* o, double* out,
                                                size_t capacity);
QWELL_API size_t qwell_oracle_sample_count(const qwell_oracle* o);
QWELL_API qwell_status qwell_oracle_samples(const qwell_oracle* o, double* x,
                                            double* psi, size_t capacity);

/* Eigenvalues of a finite-difference Hamiltonian below sigma (Sturm count). */
QWELL_API qwell_status qwell_fd_count_below(const qwell_problem* problem, int points,
                                            double sigma, size_t* out);

/* ---- comparison -------------------------------------------------------- */

typedef struct qwell_comparison {
  double pinn_energy;
  double oracle_energy;
  int has_published_energy;
  double published_energy;
  double abs_gap;
  double rel_gap;
  double wavefunction_l_inf_gap;
} qwell_comparison;

/* Published ground-state energy for a preset name; QWELL_ERR_CONFIG if none. */
QWELL_API qwell_status qwell_published_energy(const char* preset_name, double* out);

QWELL_API qwell_status qwell_compare(double pinn_energy, double oracle_energy,
                                     const char* preset_name, /* may be NULL */
                                     const double* pinn_x, const double* pinn_psi,
                                     size_t n_pinn, const double* oracle_x,
                                     const double* oracle_psi, size_t n_oracle,
                                     qwell_comparison* out);

/* ---- gradient check ---------------------------------------------------- */

#define QWELL_GRADCHECK_MAX_PARAMETERS 500

typedef struct qwell_gradcheck_group {
  char name[32];
  size_t count;
  double max_rel_error;
} qwell_gradcheck_group;

typedef struct qwell_gradcheck_result {
  size_t parameter_count;
  double max_rel_error;
  size_t n_groups; /* total groups, may exceed the capacity passed in */
} qwell_gradcheck_result;

/* Analytic vs central-difference gradients on the finite-well problem with a
 * trainable energy. Networks above QWELL_GRADCHECK_MAX_PARAMETERS parameters
 * are rejected with QWELL_ERR_CONFIG. */
QWELL_API qwell_status qwell_gradcheck(uint64_t seed, const int* layer_sizes,
                                       size_t n_layers, int n_points,
                                       qwell_gradcheck_group* groups,
                                       size_t capacity,
                                       qwell_gradcheck_result* out);

#ifdef __cplusplus
}
#endif

#endif /* QWELL_QWELL_H_ */
