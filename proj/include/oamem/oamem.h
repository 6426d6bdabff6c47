/*
 * oamem: optoacoustic coupling between Laguerre-Gaussian cavity modes and
 * surface acoustic shear modes, and coherent-state transfer fidelity.
 *
 * C interface to the shared library. Every fallible call returns an
 * oamem_status; on failure oamem_last_error() describes the problem. Rates are
 * angular frequencies (rad/s) throughout this interface.
 */
#ifndef OAMEM_H
#define OAMEM_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(OAMEM_BUILDING_LIBRARY)
#    define OAMEM_API __declspec(dllexport)
#  else
#    define OAMEM_API __declspec(dllimport)
#  endif
#else
#  define OAMEM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum oamem_status {
  OAMEM_OK = 0,
  OAMEM_ERR_INTERNAL = 1,
  OAMEM_ERR_ARGUMENT = 2,    /* invalid argument or mathematical domain error */
  OAMEM_ERR_CONFIG = 3,      /* config parse or validation failure */
  OAMEM_ERR_CONVERGENCE = 4, /* quadrature or optimizer did not converge */
  OAMEM_ERR_IO = 5
} oamem_status;

OAMEM_API const char* oamem_version(void);

/* Message for the last failure on the calling thread ("" if none). Valid
 * until the next oamem call on this thread. */
OAMEM_API const char* oamem_last_error(void);

/* ---- special functions ------------------------------------------------- */

OAMEM_API oamem_status oamem_ln_gamma(double x, double* out);
OAMEM_API oamem_status oamem_binomial(unsigned n, unsigned k, double* out);
OAMEM_API oamem_status oamem_assoc_laguerre(unsigned p, unsigned a, double x, double* out);
/* 2F1[-a_neg, -b_neg; -c_neg; z], terminating. */
OAMEM_API oamem_status oamem_hyp2f1_terminating(unsigned a_neg, unsigned b_neg,
                                                unsigned c_neg, double z, double* out);

/* ---- mode functions ------------------------------------------------------ */

typedef struct oamem_quadrature_config {
  int radial_panels;
  int angular_panels;
  int nodes_per_panel;
  double r_max_waists;
  double target_rel_error;
  int max_doublings;
} oamem_quadrature_config;

typedef struct oamem_quadrature_result {
  double value;
  double error_estimate;
  int radial_panels;
  int angular_panels;
} oamem_quadrature_result;

OAMEM_API void oamem_quadrature_config_default(oamem_quadrature_config* cfg);

OAMEM_API oamem_status oamem_mode_amplitude(int l, int p, double waist, double r,
                                            double theta, double* out);
/* quad may be NULL for defaults. */
OAMEM_API oamem_status oamem_mode_norm(int l, int p, double waist,
                                       const oamem_quadrature_config* quad,
                                       oamem_quadrature_result* out);

/* ---- coupling ------------------------------------------------------------ */

OAMEM_API int oamem_selection_allowed(int l_optical, int l_acoustic);
OAMEM_API oamem_status oamem_xi_analytic(int l, int p, int p_prime, double gamma,
                                         double* out);
OAMEM_API oamem_status oamem_xi_p0_closed_form(int l, double gamma, double* out);
OAMEM_API oamem_status oamem_gamma_opt(int l, double* out);
OAMEM_API oamem_status oamem_chi_quadrature(int l, int p, int l_prime, int p_prime,
                                            double w_c, double w_a,
                                            const oamem_quadrature_config* quad,
                                            oamem_quadrature_result* out);
OAMEM_API oamem_status oamem_single_photon_coupling(double x0, double omega_c,
                                                    double length, double* out);

/* ---- transfer fidelity --------------------------------------------------- */

typedef struct oamem_transfer_params {
  double g;
  double n_c;
  double kappa;
  double gamma_m;
  double N_m;
  double alpha;
} oamem_transfer_params;

typedef struct oamem_fidelity {
  double n;
  double lambda;
  double fidelity;
  double log_fidelity; /* ln F, finite even where F underflows to 0 */
} oamem_fidelity;

OAMEM_API oamem_status oamem_transfer_fidelity(const oamem_transfer_params* params,
                                               double xi, oamem_fidelity* out);
OAMEM_API oamem_status oamem_bose_occupation(double omega_m, double temperature,
                                             double* out);

/* ---- search -------------------------------------------------------------- */

typedef struct oamem_search_bounds {
  int p_max;
  int p_prime_max;
  double gamma_lo;
  double gamma_hi;
} oamem_search_bounds;

typedef enum oamem_objective {
  OAMEM_OBJECTIVE_COUPLING = 0,
  OAMEM_OBJECTIVE_FIDELITY = 1
} oamem_objective;

typedef struct oamem_search_result {
  int l;
  int best_p;
  int best_p_prime;
  double best_gamma;
  double objective;
  oamem_objective objective_kind;
  double signed_xi;
  int boundary_argmax;
  int has_breakdown;
  oamem_fidelity breakdown;
} oamem_search_result;

OAMEM_API void oamem_search_bounds_default(oamem_search_bounds* bounds);
OAMEM_API oamem_status oamem_max_coupling(int l, double gamma,
                                          const oamem_search_bounds* bounds,
                                          unsigned threads, oamem_search_result* out);
OAMEM_API oamem_status oamem_max_fidelity(int l, double gamma,
                                          const oamem_transfer_params* params,
                                          const oamem_search_bounds* bounds,
                                          unsigned threads, oamem_search_result* out);
OAMEM_API oamem_status oamem_argmax_gamma(int l, const oamem_search_bounds* bounds,
                                          double tol, double* out);

/* ---- configuration (opaque) ---------------------------------------------- */

typedef struct oamem_config oamem_config;

/* preset NULL selects the default preset ("fig5-caption"). */
OAMEM_API oamem_status oamem_config_create(const char* preset, oamem_config** out);
/* path NULL falls back to $OAMEM_CONFIG, then to defaults. A missing file
 * yields defaults plus a warning. */
OAMEM_API oamem_status oamem_config_load(const char* path, oamem_config** out);
OAMEM_API void oamem_config_destroy(oamem_config* cfg);

/* Rate keys (g, kappa, gamma_m, omega_m) are in Hz unless rad_per_sec != 0. */
OAMEM_API oamem_status oamem_config_set(oamem_config* cfg, const char* key,
                                        const char* value, int rad_per_sec);
OAMEM_API size_t oamem_config_warning_count(const oamem_config* cfg);
OAMEM_API const char* oamem_config_warning(const oamem_config* cfg, size_t index);
OAMEM_API double oamem_config_gamma(const oamem_config* cfg);
OAMEM_API oamem_status oamem_config_bounds(const oamem_config* cfg,
                                           oamem_search_bounds* out);
/* OAMEM_ERR_ARGUMENT when N_m is neither set nor derivable from
 * (omega_m, temperature_k). */
OAMEM_API oamem_status oamem_config_transfer_params(const oamem_config* cfg,
                                                    oamem_transfer_params* out);
/* Strings owned by the handle; valid until the next mutation or destroy. */
OAMEM_API const char* oamem_config_hash(oamem_config* cfg);
OAMEM_API const char* oamem_config_canonical(oamem_config* cfg);

/* ---- figure sweeps (opaque dataset) ---------------------------------------- */

typedef enum oamem_figure {
  OAMEM_FIG2 = 0,
  OAMEM_FIG3 = 1,
  OAMEM_FIG4A = 2,
  OAMEM_FIG4B = 3,
  OAMEM_FIG5 = 4
} oamem_figure;

typedef enum oamem_format { OAMEM_FORMAT_CSV = 0, OAMEM_FORMAT_JSON = 1 } oamem_format;

typedef struct oamem_dataset oamem_dataset;

typedef struct oamem_dataset_row {
  const char* series;
  int l;
  int p;
  int p_prime;
  double gamma;
  double xi;
  int has_n;
  double n;
  int has_lambda;
  double lambda;
  int has_fidelity;
  double fidelity;
  const char* flags; /* ';'-joined, "" when none */
} oamem_dataset_row;

OAMEM_API oamem_status oamem_parse_figure(const char* name, oamem_figure* out);
OAMEM_API oamem_status oamem_parse_format(const char* name, oamem_format* out);

/* Waist ratio and bounds come from cfg; fig4b and fig5 also take the
 * transfer parameters from cfg. l_values may be NULL (l_count 0) for the
 * per-figure default. */
OAMEM_API oamem_status oamem_sweep_run(const oamem_config* cfg, oamem_figure figure,
                                       const int* l_values, size_t l_count,
                                       unsigned threads, oamem_dataset** out);
OAMEM_API size_t oamem_dataset_row_count(const oamem_dataset* data);
/* Pointers in *out stay valid for the lifetime of data. */
OAMEM_API oamem_status oamem_dataset_get_row(const oamem_dataset* data, size_t index,
                                             oamem_dataset_row* out);
/* Serialized text owned by data. */
OAMEM_API oamem_status oamem_dataset_format(oamem_dataset* data, oamem_format format,
                                            const char** text, size_t* length);
/* path NULL or "-" writes to stdout. */
OAMEM_API oamem_status oamem_dataset_write(oamem_dataset* data, oamem_format format,
                                           const char* path);
OAMEM_API void oamem_dataset_destroy(oamem_dataset* data);

#ifdef __cplusplus
}
#endif

#endif /* OAMEM_H */
