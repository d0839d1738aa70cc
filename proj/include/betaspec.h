/* betaspec C API: random tridiagonal models of the classical beta
 * ensembles in the high-temperature regime, their spectral measures,
 * limit laws, Dirichlet-process sampling, the Markov-Krein relation and
 * the statistical convergence checks.
 *
 * All functions return bs_status; on failure bs_last_error() carries a
 * thread-local message. Out-parameters are written only on BS_OK.
 * Handles are freed with the matching bs_*_free call.
 */
#ifndef BETASPEC_H
#define BETASPEC_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bs_status {
    BS_OK = 0,
    BS_ERR_INVALID = 2,   /* parameter or input validation */
    BS_ERR_NUMERIC = 4,   /* iteration/quadrature failure   */
    BS_ERR_IO = 5         /* file could not be read/written */
} bs_status;

typedef struct bs_rng bs_rng;         /* seeded splittable random stream    */
typedef struct bs_matrix bs_matrix;   /* symmetric tridiagonal matrix       */
typedef struct bs_measure bs_measure; /* finite atomic probability measure  */
typedef struct bs_density bs_density; /* density table on a uniform grid    */
typedef struct bs_report bs_report;   /* JSON experiment report             */

const char* bs_version(void);
const char* bs_last_error(void);

/* ------------------------------------------------------------------ */
/* Random streams                                                      */

bs_status bs_rng_create(uint64_t seed, bs_rng** out);
/* Independent substream; deterministic in (parent seed, index). */
bs_status bs_rng_split(const bs_rng* rng, uint64_t index, bs_rng** out);
void bs_rng_free(bs_rng* rng);

/* ------------------------------------------------------------------ */
/* Tridiagonal matrices                                                */

bs_status bs_matrix_create(const double* diag, int n, const double* offdiag, bs_matrix** out);
void bs_matrix_free(bs_matrix* m);
int bs_matrix_size(const bs_matrix* m);
/* diag gets n entries, offdiag n-1 (offdiag may be NULL for n == 1). */
bs_status bs_matrix_copy_data(const bs_matrix* m, double* diag, double* offdiag);

bs_status bs_matrix_write_csv(const bs_matrix* m, const char* path,
                              const char* const* comments, int n_comments);
bs_status bs_matrix_read_csv(const char* path, bs_matrix** out);

/* (J^n)(1,1) by iterated matrix-vector products. */
bs_status bs_matrix_moment(const bs_matrix* m, int n, double* out);
/* Moments 0..count-1 into out. */
bs_status bs_matrix_moments(const bs_matrix* m, int count, double* out);

/* Recurrence coefficients reproducing the given raw moments
 * (m[0] = 1); moments of length 2k yield a k-by-k matrix. When the
 * underlying measure has fewer support points the call still succeeds
 * and *achieved_depth reports the recovered size. */
bs_status bs_moments_to_matrix(const double* moments, int len, int* achieved_depth,
                               bs_matrix** out);

/* Atoms at the eigenvalues, weights the squared first eigenvector
 * components. */
bs_status bs_spectral_measure(const bs_matrix* m, bs_measure** out);

/* ------------------------------------------------------------------ */
/* Ensemble samplers                                                   */

typedef enum bs_ensemble_kind {
    BS_GAUSSIAN = 0,
    BS_LAGUERRE = 1,
    BS_JACOBI = 2
} bs_ensemble_kind;

typedef struct bs_ensemble_params {
    bs_ensemble_kind kind;
    double c;     /* high-temperature parameter, beta = 2c/N */
    double alpha; /* Laguerre only */
    double a;     /* Jacobi only */
    double b;     /* Jacobi only */
} bs_ensemble_params;

/* N > 0 samples the finite model of size N; N == 0 samples the
 * semi-infinite limit matrix truncated at `depth`. */
bs_status bs_sample_ensemble(bs_rng* rng, const bs_ensemble_params* params, int N, int depth,
                             bs_matrix** out);

/* Deterministic recurrence matrices of the limit laws. */
bs_status bs_associated_hermite(double c, int depth, bs_matrix** out);
bs_status bs_associated_laguerre(double alpha, double c, int depth, bs_matrix** out);

/* ------------------------------------------------------------------ */
/* Measures                                                            */

bs_status bs_measure_create(const double* locations, const double* weights, int n,
                            bs_measure** out);
void bs_measure_free(bs_measure* m);
int bs_measure_size(const bs_measure* m);
bs_status bs_measure_copy_data(const bs_measure* m, double* locations, double* weights);
/* Right-continuous CDF at x. */
bs_status bs_measure_cdf_at(const bs_measure* m, double x, double* out);
bs_status bs_measure_write_csv(const bs_measure* m, const char* path,
                               const char* const* comments, int n_comments);
bs_status bs_measure_read_csv(const char* path, bs_measure** out);

/* ------------------------------------------------------------------ */
/* Limit densities                                                     */

/* Gaussian-case limit density, explicit-formula route. mass_tol bounds
 * the deviation of the trapezoid mass from 1 over the window. */
bs_status bs_density_rho_c(double c, double x_min, double x_max, int n_points, double mass_tol,
                           bs_density** out);
/* Laguerre-case limit density from the deep deterministic matrix. */
bs_status bs_density_laguerre_limit(double alpha, double c, double x_min, double x_max,
                                    int n_points, bs_density** out);
/* Jacobi-case limit density estimated as the Monte Carlo mean of limit
 * spectral measures (no closed form is pretended). */
bs_status bs_density_jacobi_mc(bs_rng* rng, double a, double b, double c, int depth, int trials,
                               int n_points, int threads, bs_density** out);
/* The same Monte Carlo estimate written as a CDF table with per-point
 * standard errors (columns x,cdf,se). */
bs_status bs_jacobi_mc_cdf_csv(bs_rng* rng, double a, double b, double c, int depth, int trials,
                               int n_points, int threads, const char* path,
                               const char* const* comments, int n_comments);

void bs_density_free(bs_density* d);
int bs_density_size(const bs_density* d);
bs_status bs_density_copy_data(const bs_density* d, double* x, double* values);
bs_status bs_density_mass(const bs_density* d, double* out);
bs_status bs_density_write_csv(const bs_density* d, const char* path,
                               const char* const* comments, int n_comments);
bs_status bs_density_read_csv(const char* path, double target_mass, double mass_tol,
                              bs_density** out);

/* ------------------------------------------------------------------ */
/* Dirichlet-process sampling                                          */

/* Truncated stick-breaking draw; *trunc_error (optional) receives the
 * stick mass still unassigned when truncation stopped. */
bs_status bs_dp_sample_from_density(bs_rng* rng, const bs_density* base, double c,
                                    double mass_tol, double* trunc_error, bs_measure** out);
bs_status bs_dp_sample_from_measure(bs_rng* rng, const bs_measure* base, double c,
                                    double mass_tol, double* trunc_error, bs_measure** out);

/* ------------------------------------------------------------------ */
/* Markov-Krein checks                                                 */

/* Finite-support identity: Dirichlet(c/N) weights on fixed eigenvalues.
 * f_name is one of "arctan", "rational", "step", "id". */
bs_status bs_mkr_check_finite(bs_rng* rng, const double* eigenvalues, int n, double c,
                              const char* f_name, const double* z_re, const double* z_im, int nz,
                              long M, int threads, bs_report** out);
/* Dirichlet-process left side over a tabulated base density. */
bs_status bs_mkr_check_dp(bs_rng* rng, const bs_density* base, double c, const char* f_name,
                          const double* z_re, const double* z_im, int nz, long M, int threads,
                          bs_report** out);

/* ------------------------------------------------------------------ */
/* Convergence experiments                                             */

bs_status bs_check_empirical(bs_rng* rng, const bs_ensemble_params* params, const int* N_list,
                             int n_sizes, int trials, int threads, bs_report** out);
bs_status bs_check_dp_limit(bs_rng* rng, const bs_ensemble_params* params, const char* f_name,
                            const int* N_list, int n_sizes, int M, int threads, bs_report** out);
bs_status bs_check_weight_law(bs_rng* rng, const bs_ensemble_params* params, int N, int M,
                              int threads, bs_report** out);
bs_status bs_check_limit_dp(bs_rng* rng, const bs_ensemble_params* params, int depth, int M,
                            const char* f_name, int threads, bs_report** out);
/* Gaussian-limit moment ladder against the exact recurrence moments. */
bs_status bs_check_moments(bs_rng* rng, double c, int k_max, int M, int threads, bs_report** out);
bs_status bs_check_entries(bs_rng* rng, const bs_ensemble_params* params, int off_diagonal,
                           int entry_index, const int* N_list, int n_sizes, int M, int threads,
                           bs_report** out);

/* ------------------------------------------------------------------ */
/* Reports                                                             */

/* Borrowed pointer, valid until bs_report_free. */
const char* bs_report_json(const bs_report* r);
int bs_report_passed(const bs_report* r);
void bs_report_free(bs_report* r);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BETASPEC_H */
