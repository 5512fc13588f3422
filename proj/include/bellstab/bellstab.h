/*
 * Copyright 2026 The bellstab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the driven-dissipative two-qubit + cavity simulator.
 *
 * Units: frequencies are angular rates in rad/us, times in us. Every
 * function returns a bs_status; on failure a message describing the
 * violated invariant is available from bs_last_error() on the calling
 * thread. Result objects are opaque handles released with their _free
 * function; passing NULL to a _free function is a no-op.
 */

#ifndef BELLSTAB_BELLSTAB_H
#define BELLSTAB_BELLSTAB_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(BELLSTAB_BUILDING)
#    define BELLSTAB_API __declspec(dllexport)
#  else
#    define BELLSTAB_API __declspec(dllimport)
#  endif
#else
#  define BELLSTAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bs_status {
  BS_OK = 0,
  BS_INVALID_ARGUMENT = 1, /* null pointer, bad index, malformed axis */
  BS_INVALID_PARAMS = 2,   /* physical parameter invariant violated */
  BS_EVOLUTION_ABORTED = 3,/* non-finite state or invariant blow-up */
  BS_INTERNAL_ERROR = 4
} bs_status;

typedef enum bs_initial_state {
  BS_INITIAL_GG0 = 0,
  BS_INITIAL_EE0 = 1,
  BS_INITIAL_PHI_PLUS_0 = 2,
  BS_INITIAL_PHI_MINUS_0 = 3
} bs_initial_state;

typedef struct bs_params {
  double chi_a;      /* rad/us */
  double chi_b;      /* rad/us */
  double kappa;      /* rad/us */
  double t1_a, t1_b; /* us; INFINITY disables relaxation */
  double t2_a, t2_b; /* us; T2 <= 2 T1 */
  double nbar;
  double omega0;     /* rad/us */
  double omega_nbar; /* rad/us */
  double epsilon_c;  /* rad/us; used only when epsilon_c_set != 0 */
  int epsilon_c_set; /* 0: epsilon_c = (kappa/2) sqrt(nbar) */
  int ncav;          /* 0: ceil(nbar + 5 sqrt(nbar)) + 2 */
} bs_params;

typedef struct bs_evolution {
  double dt;        /* us */
  double t_final;   /* us */
  int record_every; /* steps between recorded samples */
  int enforce_invariants;
} bs_evolution;

typedef struct bs_record {
  double t;
  double fidelity;
  double chsh;
  double photon_number;
  double p_gg, p_ee, p_odd;
} bs_record;

typedef struct bs_steady_state {
  double window_start;
  size_t samples;
  double fidelity_mean, fidelity_spread;
  double chsh_mean, chsh_spread;
} bs_steady_state;

typedef struct bs_invariants {
  double max_trace_deviation;
  double max_hermiticity_deviation;
  double min_eigenvalue;
  int renormalizations;
  int samples;
} bs_invariants;

typedef struct bs_regime_check {
  const char* name;     /* valid until the report is freed */
  const char* relation;
  double value;
  double threshold;
  int passed;
} bs_regime_check;

typedef struct bs_sweep_point {
  double nbar;
  double omega_ratio; /* Omega_nbar / kappa */
  int ok;
  double fidelity;
  double chsh;
  const char* error; /* empty when ok; valid until the sweep is freed */
} bs_sweep_point;

typedef struct bs_truncation_row {
  int ncav;
  int valid;
  int below_recommended;
  double fidelity;
  double chsh;
  const char* note;
} bs_truncation_row;

typedef struct bs_oracle_entry {
  const char* name;
  double error;
  double tolerance;
  int passed;
  const char* detail;
} bs_oracle_entry;

typedef struct bs_timeseries bs_timeseries;
typedef struct bs_sweep bs_sweep;
typedef struct bs_truncation bs_truncation;
typedef struct bs_oracle_report bs_oracle_report;
typedef struct bs_regime_report bs_regime_report;

BELLSTAB_API const char* bs_version(void);
BELLSTAB_API const char* bs_status_string(bs_status status);
/* Message of the last failed call on this thread; empty if none. */
BELLSTAB_API const char* bs_last_error(void);

/* Reference operating point: chi/2pi = 10, 9.5 MHz; kappa/2pi = 2 MHz;
 * T1 = T2 = 50 us; nbar = 4; Omega0 = kappa/2; Omega_nbar = kappa. */
BELLSTAB_API bs_status bs_params_reference(bs_params* out);
BELLSTAB_API bs_status bs_params_validate(const bs_params* params);
BELLSTAB_API bs_status bs_evolution_default(bs_evolution* out);

BELLSTAB_API bs_status bs_dispersive_shift(double g, double delta, double* chi, int* degraded);
BELLSTAB_API bs_status bs_epsilon_c_default(double kappa, double nbar, double* out);
BELLSTAB_API bs_status bs_validity_ratio(const bs_params* params, double* out);
BELLSTAB_API bs_status bs_min_ncav(double nbar, int* out);
BELLSTAB_API bs_status bs_default_ncav(double nbar, int* out);

BELLSTAB_API bs_status bs_regime_checks(const bs_params* params, bs_regime_report** out);
BELLSTAB_API size_t bs_regime_report_size(const bs_regime_report* report);
BELLSTAB_API bs_status bs_regime_report_get(const bs_regime_report* report, size_t i,
                                            bs_regime_check* out);
BELLSTAB_API void bs_regime_report_free(bs_regime_report* report);

BELLSTAB_API bs_status bs_run_time_series(const bs_params* params, const bs_evolution* evolution,
                                          bs_initial_state initial, bs_timeseries** out);
BELLSTAB_API size_t bs_timeseries_size(const bs_timeseries* ts);
BELLSTAB_API bs_status bs_timeseries_record(const bs_timeseries* ts, size_t i, bs_record* out);
BELLSTAB_API bs_status bs_timeseries_steady(const bs_timeseries* ts, bs_steady_state* out);
BELLSTAB_API bs_status bs_timeseries_invariants(const bs_timeseries* ts, bs_invariants* out);
BELLSTAB_API void bs_timeseries_free(bs_timeseries* ts);

/* threads = 0 uses the hardware concurrency. */
BELLSTAB_API bs_status bs_run_sweep(const bs_params* base, const bs_evolution* evolution,
                                    const double* nbar_values, size_t n_nbar,
                                    const double* omega_ratio_values, size_t n_omega,
                                    unsigned threads, bs_sweep** out);
BELLSTAB_API size_t bs_sweep_nbar_count(const bs_sweep* sweep);
BELLSTAB_API size_t bs_sweep_omega_count(const bs_sweep* sweep);
BELLSTAB_API bs_status bs_sweep_point_get(const bs_sweep* sweep, size_t i_nbar, size_t j_omega,
                                          bs_sweep_point* out);
BELLSTAB_API void bs_sweep_free(bs_sweep* sweep);

BELLSTAB_API bs_status bs_run_truncation(const bs_params* params, const bs_evolution* evolution,
                                         const int* ncav_values, size_t n, bs_truncation** out);
BELLSTAB_API size_t bs_truncation_size(const bs_truncation* study);
BELLSTAB_API bs_status bs_truncation_row_get(const bs_truncation* study, size_t i,
                                             bs_truncation_row* out);
BELLSTAB_API void bs_truncation_free(bs_truncation* study);

BELLSTAB_API bs_status bs_run_oracles(double dt, bs_oracle_report** out);
BELLSTAB_API size_t bs_oracle_report_size(const bs_oracle_report* report);
BELLSTAB_API bs_status bs_oracle_report_get(const bs_oracle_report* report, size_t i,
                                            bs_oracle_entry* out);
BELLSTAB_API int bs_oracle_report_all_passed(const bs_oracle_report* report);
BELLSTAB_API void bs_oracle_report_free(bs_oracle_report* report);

#ifdef __cplusplus
}
#endif

#endif /* BELLSTAB_BELLSTAB_H */
