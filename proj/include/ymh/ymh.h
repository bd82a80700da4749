/*
 * C interface to the ymhchaos library.
 *
 * Conventions:
 *   - Every fallible call returns an int status (YMH_OK = 0). On failure the
 *     message is available from ymh_last_error() on the calling thread until
 *     the next failing call on that thread.
 *   - Results with variable size are returned through opaque handles that
 *     the caller releases with the matching *_free function. Passing NULL to
 *     a *_free function is a no-op.
 *   - Pointers returned by accessors stay valid until the owning handle is
 *     freed.
 */
#ifndef YMH_YMH_H
#define YMH_YMH_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(YMH_BUILDING_LIBRARY)
#    define YMH_API __declspec(dllexport)
#  else
#    define YMH_API __declspec(dllimport)
#  endif
#else
#  define YMH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ymh_status {
    YMH_OK = 0,
    YMH_ERR_INVALID_ARGUMENT = 1,
    YMH_ERR_NON_FINITE_STATE = 2,
    YMH_ERR_ENERGY_DRIFT = 3,
    YMH_ERR_NO_CROSSINGS = 4,
    YMH_ERR_DEGENERATE_ORBIT = 5,
    YMH_ERR_OFF_SHELL = 6,
    YMH_ERR_DIMENSION_OVERFLOW = 7,
    YMH_ERR_CONVERGENCE_FAILURE = 8,
    YMH_ERR_NO_CONVERGENCE = 9,
    YMH_ERR_DEGENERATE_FIT = 10,
    YMH_ERR_INSUFFICIENT_DATA = 11,
    YMH_ERR_BUFFER_TOO_SMALL = 12,
    YMH_ERR_INTERNAL = 99
} ymh_status;

YMH_API const char* ymh_version(void);
YMH_API const char* ymh_status_name(int status);
YMH_API const char* ymh_last_error(void);

/* ---- model ------------------------------------------------------------ */

typedef struct ymh_params {
    double g; /* coupling, > 0 */
    double v; /* Higgs vacuum, >= 0 */
} ymh_params;

typedef struct ymh_state {
    double q1, q2, p1, p2, t;
} ymh_state;

YMH_API int ymh_omega(const ymh_params* params, double* out);
YMH_API int ymh_potential_energy(const ymh_params* params, double q1, double q2, double* out);
YMH_API int ymh_total_energy(const ymh_params* params, const ymh_state* state, double* out);
YMH_API int ymh_curvature_discriminant(const ymh_params* params, double q1, double q2, double* out);
YMH_API int ymh_critical_energy(const ymh_params* params, double* out);
YMH_API int ymh_critical_vacuum(double energy, double g, double* out);

/* Numerical minimum of the potential on the zero-curvature line. */
YMH_API int ymh_zero_curvature_minimum(const ymh_params* params, double* q1, double* q2,
                                       double* energy);

/* ---- dynamics --------------------------------------------------------- */

typedef struct ymh_integrator_config {
    double step_h;
    double t_max;
    double energy_drift_tol;
} ymh_integrator_config;

/* h = 1e-3, t_max = 1e3, drift tolerance 1e-6. */
YMH_API ymh_integrator_config ymh_integrator_config_default(void);

YMH_API int ymh_rk4_step(const ymh_params* params, const ymh_state* state, double h,
                         ymh_state* out);
YMH_API int ymh_seed_on_shell(const ymh_params* params, double energy, double q2, double p2,
                              ymh_state* out);

typedef struct ymh_trajectory ymh_trajectory;

YMH_API int ymh_integrate(const ymh_params* params, const ymh_state* state0,
                          const ymh_integrator_config* cfg, ymh_trajectory** out);
YMH_API size_t ymh_trajectory_size(const ymh_trajectory* traj);
YMH_API int ymh_trajectory_sample(const ymh_trajectory* traj, size_t index, ymh_state* out);
YMH_API double ymh_trajectory_initial_energy(const ymh_trajectory* traj);
YMH_API double ymh_trajectory_max_drift(const ymh_trajectory* traj);
YMH_API void ymh_trajectory_free(ymh_trajectory* traj);

typedef struct ymh_section ymh_section;

/* Upward (dq1/dt > 0) crossings of q1 = 0, linearly interpolated in t. */
YMH_API int ymh_poincare_section(const ymh_params* params, const ymh_state* state0,
                                 const ymh_integrator_config* cfg, size_t n_crossings,
                                 ymh_section** out);
YMH_API size_t ymh_section_size(const ymh_section* section);
YMH_API int ymh_section_point(const ymh_section* section, size_t index, double* t, double* q2,
                              double* p2);
YMH_API double ymh_section_energy(const ymh_section* section);
YMH_API double ymh_section_max_drift(const ymh_section* section);
YMH_API void ymh_section_free(ymh_section* section);

/* Section seeds, given as fractions of the shell extent (see seed files). */
typedef struct ymh_seed_list ymh_seed_list;

YMH_API int ymh_seed_list_parse(const char* text, ymh_seed_list** out);
/* The seed list shipped with the library (config/poincare_seeds.txt). */
YMH_API int ymh_seed_list_default(ymh_seed_list** out);
YMH_API size_t ymh_seed_list_size(const ymh_seed_list* seeds);
YMH_API int ymh_seed_list_get(const ymh_seed_list* seeds, size_t index, const char** label,
                              double* q2_frac, double* p2_frac);
YMH_API int ymh_seed_state(const ymh_params* params, double energy, double q2_frac,
                           double p2_frac, ymh_state* out);
YMH_API void ymh_seed_list_free(ymh_seed_list* seeds);

/* ---- quantum ---------------------------------------------------------- */

typedef enum ymh_sector {
    YMH_SECTOR_EE = 0,
    YMH_SECTOR_OO = 1,
    YMH_SECTOR_EO = 2,
    YMH_SECTOR_OE = 3,
    /* n1 <-> n2 symmetric / antisymmetric parts of ee and oo. */
    YMH_SECTOR_EE_SYM = 4,
    YMH_SECTOR_EE_ANTI = 5,
    YMH_SECTOR_OO_SYM = 6,
    YMH_SECTOR_OO_ANTI = 7
} ymh_sector;

YMH_API const char* ymh_sector_label(ymh_sector sector);

YMH_API int ymh_h0_element(const ymh_params* params, int n1p, int n2p, int n1, int n2,
                           double* out);
YMH_API int ymh_v_element(const ymh_params* params, int n1p, int n2p, int n1, int n2,
                          double* out);

typedef struct ymh_convergence_options {
    size_t n_levels;      /* levels to certify (100) */
    int digits;           /* relative digits (8) */
    int n_max_start;      /* 0 = automatic */
    int n_max_step;       /* 4 */
    double coupling_scale; /* 1; 0 switches the quartic term off */
    size_t max_dimension; /* per-block cap (4096) */
} ymh_convergence_options;

YMH_API ymh_convergence_options ymh_convergence_options_default(void);

typedef struct ymh_spectrum ymh_spectrum;

/* All eigenvalues of one block at a fixed truncation n_max. */
YMH_API int ymh_spectrum_diagonalize(const ymh_params* params, ymh_sector sector, int n_max,
                                     double coupling_scale, ymh_spectrum** out);
/* Enlarges n_max until the leading levels are certified. */
YMH_API int ymh_spectrum_converge(const ymh_params* params, ymh_sector sector,
                                  const ymh_convergence_options* options, ymh_spectrum** out);
/* ee, oo, eo, oe, computed concurrently. On failure no handles are returned. */
YMH_API int ymh_spectrum_converge_parity_blocks(const ymh_params* params,
                                                const ymh_convergence_options* options,
                                                ymh_spectrum* out[4]);

YMH_API size_t ymh_spectrum_size(const ymh_spectrum* spectrum);
YMH_API const double* ymh_spectrum_levels(const ymh_spectrum* spectrum);
YMH_API const char* ymh_spectrum_label(const ymh_spectrum* spectrum);
YMH_API int ymh_spectrum_n_max(const ymh_spectrum* spectrum);
YMH_API size_t ymh_spectrum_dimension(const ymh_spectrum* spectrum);
YMH_API size_t ymh_spectrum_n_converged(const ymh_spectrum* spectrum);
YMH_API int ymh_spectrum_digits(const ymh_spectrum* spectrum);
/* Enlargement rounds of ymh_spectrum_converge, oldest first. */
YMH_API size_t ymh_spectrum_rounds(const ymh_spectrum* spectrum);
YMH_API int ymh_spectrum_round(const ymh_spectrum* spectrum, size_t round, int* n_max,
                               const double** levels, size_t* count);
YMH_API void ymh_spectrum_free(ymh_spectrum* spectrum);

/* ---- level statistics ------------------------------------------------- */

YMH_API int ymh_brody_pdf(double s, double q, double* out);
YMH_API int ymh_poisson_pdf(double s, double* out);
YMH_API int ymh_wigner_pdf(double s, double* out);

typedef struct ymh_ensemble ymh_ensemble;

YMH_API int ymh_ensemble_create(ymh_ensemble** out);
/* Unfolds one block of ascending levels and appends its spacings. */
YMH_API int ymh_ensemble_add_levels(ymh_ensemble* ensemble, const double* levels, size_t count,
                                    int unfold_degree, const char* label);
/* Appends already unfolded spacings as one block. */
YMH_API int ymh_ensemble_add_spacings(ymh_ensemble* ensemble, const double* spacings,
                                      size_t count, const char* label);
YMH_API size_t ymh_ensemble_size(const ymh_ensemble* ensemble);
YMH_API const double* ymh_ensemble_spacings(const ymh_ensemble* ensemble);
YMH_API size_t ymh_ensemble_blocks(const ymh_ensemble* ensemble);
YMH_API size_t ymh_ensemble_block_count(const ymh_ensemble* ensemble, size_t block);
YMH_API void ymh_ensemble_free(ymh_ensemble* ensemble);

typedef struct ymh_brody_fit {
    double brody_q;
    double log_likelihood;
    double stderr_q;
    int at_boundary;
    size_t n_spacings;
} ymh_brody_fit;

YMH_API int ymh_fit_brody(const ymh_ensemble* ensemble, ymh_brody_fit* out);

/*
 * Normalized spacing histogram. Call with capacity 0 (buffers may be NULL)
 * to learn the bin count through *n_bins; a short buffer yields
 * YMH_ERR_BUFFER_TOO_SMALL with *n_bins set.
 */
YMH_API int ymh_histogram(const ymh_ensemble* ensemble, double bin_width, double s_extent,
                          double* centers, double* densities, size_t* counts, size_t capacity,
                          size_t* n_bins);

#ifdef __cplusplus
}
#endif

#endif /* YMH_YMH_H */
