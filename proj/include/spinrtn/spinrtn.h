/* C interface to the spinrtn library.
 *
 * Every call returns a spinrtn_status; on failure spinrtn_last_error() holds a
 * message for the calling thread. Objects are opaque handles released with
 * the matching *_free function (passing NULL is allowed).
 *
 * Superoperators are 16x16 complex matrices acting on row-major vectorized
 * 4x4 operators, vec[4i + j] = rho(i, j). Flat arrays of 16 (4x4) or 256
 * (16x16) doubles are row-major. Units: hbar = 1; j0, alpha, lambda are
 * inverse times. */
#ifndef SPINRTN_H
#define SPINRTN_H

#include <stddef.h>
#include <stdint.h>

#if defined(SPINRTN_BUILDING_LIBRARY)
#define SPINRTN_API __attribute__((visibility("default")))
#else
#define SPINRTN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum spinrtn_status {
  SPINRTN_OK = 0,
  SPINRTN_INVALID_ARGUMENT = 1,
  SPINRTN_DOMAIN_ERROR = 2,
  SPINRTN_OUT_OF_RANGE = 3,
  SPINRTN_NO_CONVERGENCE = 4,
  SPINRTN_NULL_POINTER = 5,
  SPINRTN_INTERNAL_ERROR = 99
} spinrtn_status;

SPINRTN_API const char* spinrtn_last_error(void);
SPINRTN_API const char* spinrtn_version(void);
SPINRTN_API const char* spinrtn_status_name(spinrtn_status status);

typedef struct spinrtn_params {
  double j0;
  double alpha;
  double lambda;
} spinrtn_params;

typedef enum spinrtn_regime {
  SPINRTN_REGIME_NO_FLUCT = 0,
  SPINRTN_REGIME_GE1 = 1,
  SPINRTN_REGIME_SLOW = 2,
  SPINRTN_REGIME_FAST = 3,
  SPINRTN_REGIME_EXACT = 4,
  SPINRTN_REGIME_APPROX = 5
} spinrtn_regime;

typedef enum spinrtn_form { SPINRTN_FORM_EXACT = 0, SPINRTN_FORM_APPROX = 1 } spinrtn_form;

typedef enum spinrtn_xi_kind {
  SPINRTN_XI_EXACT_FULL = 0,
  SPINRTN_XI_EXACT_GE1 = 1,
  SPINRTN_XI_DELTA_PAIR = 2,
  SPINRTN_XI_UNIFORM_SLOW = 3,
  SPINRTN_XI_GAUSSIAN_FAST = 4,
  SPINRTN_XI_APPROX_FULL = 5
} spinrtn_xi_kind;

/* ---- Superoperators ---------------------------------------------------- */

typedef struct spinrtn_superop spinrtn_superop;

SPINRTN_API void spinrtn_superop_free(spinrtn_superop* s);
/* re and im receive 256 values each. */
SPINRTN_API spinrtn_status spinrtn_superop_get(const spinrtn_superop* s, double* re, double* im);
SPINRTN_API spinrtn_status spinrtn_superop_from_matrix(const double* re, const double* im, spinrtn_superop** out);
SPINRTN_API spinrtn_status spinrtn_superop_multiply(const spinrtn_superop* a, const spinrtn_superop* b,
                                                    spinrtn_superop** out);
/* Image of a 4x4 operator (16 values each for input and output). */
SPINRTN_API spinrtn_status spinrtn_superop_apply(const spinrtn_superop* s, const double* rho_re,
                                                 const double* rho_im, double* out_re, double* out_im);
/* tr(P S) / tr(P) for the sigma_h eigenspace P with the given eigenvalue (-4, 0, 4). */
SPINRTN_API spinrtn_status spinrtn_superop_kernel(const spinrtn_superop* s, double eigenvalue, double* re,
                                                  double* im);

typedef struct spinrtn_channel_diagnostics {
  double trace_error;
  double hermiticity_error;
  double choi_min_eigenvalue;
  double unitarity_error;
} spinrtn_channel_diagnostics;

SPINRTN_API spinrtn_status spinrtn_superop_diagnostics(const spinrtn_superop* s, spinrtn_channel_diagnostics* out);

typedef struct spinrtn_compare {
  double sup_norm;
  double frobenius;
  double kernel_delta[3]; /* eigenvalues -4, 0, 4 */
} spinrtn_compare;

SPINRTN_API spinrtn_status spinrtn_superop_compare(const spinrtn_superop* a, const spinrtn_superop* b,
                                                   spinrtn_compare* out);

SPINRTN_API spinrtn_status spinrtn_sigma_h(spinrtn_superop** out);
/* U kron conj(U); rejects non-unitary U. */
SPINRTN_API spinrtn_status spinrtn_unitary_superop(const double* u_re, const double* u_im, spinrtn_superop** out);
/* Gate names: I, X1, X2, Y1, Y2, Z1, Z2, H1, H2, S1, S2, CNOT, CZ, SWAP. */
SPINRTN_API spinrtn_status spinrtn_named_gate(const char* name, double* u_re, double* u_im);

/* ---- Closed forms ------------------------------------------------------ */

/* Scalar kernel at x = alpha s t, y = lambda t. */
SPINRTN_API spinrtn_status spinrtn_kernel(spinrtn_regime regime, double x, double y, double* out);
SPINRTN_API spinrtn_status spinrtn_q_nu_value(spinrtn_regime regime, double alpha, double lambda, double t,
                                              double* out);
SPINRTN_API spinrtn_status spinrtn_q_unitary(double j0, double t, spinrtn_superop** out);
SPINRTN_API spinrtn_status spinrtn_qnu(spinrtn_regime regime, double alpha, double lambda, double t,
                                       spinrtn_superop** out);
SPINRTN_API spinrtn_status spinrtn_q_full(const spinrtn_params* params, double t, spinrtn_form form,
                                          spinrtn_superop** out);
SPINRTN_API spinrtn_status spinrtn_lindblad(double alpha, double lambda, spinrtn_superop** out);

/* ---- Distributions of xi ----------------------------------------------- */

SPINRTN_API spinrtn_status spinrtn_bessel_i1(double x, double* out);
SPINRTN_API spinrtn_status spinrtn_poisson_weight(unsigned k, double lambda_t, double* out);
/* Continuous density (zero outside the support). */
SPINRTN_API spinrtn_status spinrtn_xi_density(spinrtn_xi_kind kind, double xi, double lambda_t, double* out);
SPINRTN_API spinrtn_status spinrtn_xi_atoms(spinrtn_xi_kind kind, double lambda_t, double* weight_pos,
                                            double* weight_neg);
/* Continuous mass plus atoms, by adaptive quadrature. */
SPINRTN_API spinrtn_status spinrtn_xi_mass(spinrtn_xi_kind kind, double lambda_t, double abs_tol, double* mass,
                                           double* error);
SPINRTN_API spinrtn_status spinrtn_xi_leakage(spinrtn_xi_kind kind, double lambda_t, double* out);

/* ---- Trajectories ------------------------------------------------------ */

typedef struct spinrtn_trajectory spinrtn_trajectory;

SPINRTN_API spinrtn_status spinrtn_trajectory_sample(const spinrtn_params* params, double duration,
                                                     uint64_t master_seed, uint64_t index,
                                                     spinrtn_trajectory** out);
SPINRTN_API void spinrtn_trajectory_free(spinrtn_trajectory* traj);
SPINRTN_API spinrtn_status spinrtn_trajectory_info(const spinrtn_trajectory* traj, double* duration,
                                                   int* initial_sign, size_t* n_jumps);
/* Copies min(capacity, n_jumps) jump times. */
SPINRTN_API spinrtn_status spinrtn_trajectory_jumps(const spinrtn_trajectory* traj, double* out, size_t capacity);
SPINRTN_API spinrtn_status spinrtn_trajectory_eta(const spinrtn_trajectory* traj, double t, int* out);
SPINRTN_API spinrtn_status spinrtn_trajectory_xi(const spinrtn_trajectory* traj, double* out);
SPINRTN_API spinrtn_status spinrtn_trajectory_superop(const spinrtn_params* params, const spinrtn_trajectory* traj,
                                                      spinrtn_superop** out);

/* ---- Ensembles and quadrature ------------------------------------------ */

typedef struct spinrtn_ensemble spinrtn_ensemble;

typedef struct spinrtn_ensemble_summary {
  uint64_t n_trajectories;
  uint64_t master_seed;
  double standard_error;        /* element-wise maximum */
  double kernel_re;             /* Monte Carlo Q_NU */
  double kernel_im;
  double kernel_standard_error;
  uint64_t atom_pos;
  uint64_t atom_neg;
  size_t histogram_bins;
} spinrtn_ensemble_summary;

/* threads = 0 uses every core; the result does not depend on it. */
SPINRTN_API spinrtn_status spinrtn_mc_average(const spinrtn_params* params, double t, uint64_t n,
                                              uint64_t master_seed, unsigned threads, int histogram_bins,
                                              spinrtn_ensemble** out);
SPINRTN_API spinrtn_status spinrtn_mc_average_multi(const spinrtn_params* fluctuators, size_t count, double t,
                                                    uint64_t n, uint64_t master_seed, unsigned threads,
                                                    spinrtn_ensemble** out);
SPINRTN_API void spinrtn_ensemble_free(spinrtn_ensemble* e);
SPINRTN_API spinrtn_status spinrtn_ensemble_summary_get(const spinrtn_ensemble* e, spinrtn_ensemble_summary* out);
SPINRTN_API spinrtn_status spinrtn_ensemble_mean(const spinrtn_ensemble* e, spinrtn_superop** out);
/* 256 values. */
SPINRTN_API spinrtn_status spinrtn_ensemble_element_se(const spinrtn_ensemble* e, double* out);
SPINRTN_API spinrtn_status spinrtn_ensemble_histogram(const spinrtn_ensemble* e, uint64_t* counts, size_t capacity);

SPINRTN_API spinrtn_status spinrtn_quadrature_q(const spinrtn_params* params, double t, spinrtn_xi_kind kind,
                                                double abs_tol, spinrtn_superop** out, double* error);

/* ---- Composition ------------------------------------------------------- */

SPINRTN_API spinrtn_status spinrtn_product_fluctuators(const spinrtn_params* fluctuators, size_t count, double t,
                                                       spinrtn_superop** out);

typedef struct spinrtn_component {
  double alpha;
  double lambda;
  double weight;
} spinrtn_component;

SPINRTN_API spinrtn_status spinrtn_weighted_product(const spinrtn_component* components, size_t count,
                                                    double n_fluctuators, double j0, double t,
                                                    spinrtn_superop** out);

typedef enum spinrtn_lambda_law {
  SPINRTN_LAMBDA_POINT = 0,
  SPINRTN_LAMBDA_UNIFORM = 1,
  SPINRTN_LAMBDA_LOG_UNIFORM = 2
} spinrtn_lambda_law;

typedef enum spinrtn_alpha_law {
  SPINRTN_ALPHA_CONSTANT = 0,
  SPINRTN_ALPHA_UNIFORM = 1,
  SPINRTN_ALPHA_TABULATED = 2
} spinrtn_alpha_law;

typedef struct spinrtn_spectrum {
  spinrtn_lambda_law lambda_law;
  double lambda_min;
  double lambda_max;
  spinrtn_alpha_law alpha_law;
  double alpha_min; /* the constant value for SPINRTN_ALPHA_CONSTANT */
  double alpha_max;
  const double* alpha_values;
  const double* alpha_weights;
  size_t alpha_count;
  double n_fluctuators;
} spinrtn_spectrum;

SPINRTN_API spinrtn_status spinrtn_spectral_compose(const spinrtn_spectrum* spectrum, double j0, double t,
                                                    spinrtn_superop** out);
/* weighted_product of the Gauss-Legendre discretisation with `points` nodes per axis. */
SPINRTN_API spinrtn_status spinrtn_spectral_discrete_compose(const spinrtn_spectrum* spectrum, int points,
                                                             double j0, double t, spinrtn_superop** out);
SPINRTN_API spinrtn_status spinrtn_spectrum_mean_inverse_lambda(const spinrtn_spectrum* spectrum, double* out);

/* ---- Gate sequences ---------------------------------------------------- */

typedef struct spinrtn_sequence spinrtn_sequence;
typedef struct spinrtn_sequence_result spinrtn_sequence_result;

typedef enum spinrtn_sequence_part {
  SPINRTN_PART_RAW = 0,
  SPINRTN_PART_CORRECTED = 1,
  SPINRTN_PART_CROSS_TERMS = 2,
  SPINRTN_PART_RAW_NO_FLUCT = 3,
  SPINRTN_PART_CORRECTED_NO_FLUCT = 4
} spinrtn_sequence_part;

SPINRTN_API spinrtn_status spinrtn_sequence_create(spinrtn_sequence** out);
SPINRTN_API void spinrtn_sequence_free(spinrtn_sequence* seq);
SPINRTN_API spinrtn_status spinrtn_sequence_add_noise(spinrtn_sequence* seq, double t);
SPINRTN_API spinrtn_status spinrtn_sequence_add_gate(spinrtn_sequence* seq, const double* u_re, const double* u_im,
                                                     double duration);
SPINRTN_API spinrtn_status spinrtn_sequence_add_named_gate(spinrtn_sequence* seq, const char* name, double duration);
SPINRTN_API spinrtn_status spinrtn_sequence_length(const spinrtn_sequence* seq, size_t* out);

SPINRTN_API spinrtn_status spinrtn_sequence_evaluate(const spinrtn_sequence* seq, const spinrtn_params* params,
                                                     spinrtn_sequence_result** out);
SPINRTN_API void spinrtn_sequence_result_free(spinrtn_sequence_result* r);
SPINRTN_API spinrtn_status spinrtn_sequence_result_part(const spinrtn_sequence_result* r,
                                                        spinrtn_sequence_part part, spinrtn_superop** out);
SPINRTN_API spinrtn_status spinrtn_sequence_result_weights(const spinrtn_sequence_result* r, double* p0,
                                                           double* p_gt0, double* t_total);
SPINRTN_API size_t spinrtn_sequence_result_note_count(const spinrtn_sequence_result* r);
/* NULL when i is out of range. Valid while r lives. */
SPINRTN_API const char* spinrtn_sequence_result_note(const spinrtn_sequence_result* r, size_t i);

/* Monte Carlo over one telegraph history spanning the sequence. element_se
 * (256 values) may be NULL. */
SPINRTN_API spinrtn_status spinrtn_sequence_mc(const spinrtn_sequence* seq, const spinrtn_params* params,
                                               uint64_t n, uint64_t master_seed, unsigned threads,
                                               spinrtn_superop** mean, double* standard_error,
                                               double* element_se);

#ifdef __cplusplus
}
#endif

#endif
