/*
 * fascopula C API.
 *
 * Outage probability and best-port channel statistics of a fluid antenna
 * receiver whose K port gains are Nakagami-m distributed and coupled by an
 * Archimedean copula (Frank, Clayton, Gumbel) or are independent.
 *
 * Every function returns an fas_status code; results are written through out
 * pointers only on FAS_OK. fas_last_error() returns a message describing the
 * most recent failure on the calling thread.
 *
 * SNR arguments are linear (not dB).
 */
#ifndef FAS_FAS_H
#define FAS_FAS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FAS_BUILDING_LIBRARY)
#    define FAS_API __declspec(dllexport)
#  else
#    define FAS_API __declspec(dllimport)
#  endif
#else
#  define FAS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fas_status {
    FAS_OK = 0,
    FAS_ERR_NULL_ARGUMENT = 1,
    FAS_ERR_DOMAIN = 2,            /* argument outside the function's domain */
    FAS_ERR_INVALID_PARAMETER = 3, /* model parameter violates its invariant */
    FAS_ERR_UNSUPPORTED = 4,       /* valid input the routine does not handle */
    FAS_ERR_NO_CONVERGENCE = 5,
    FAS_ERR_INTERNAL = 6
} fas_status;

typedef enum fas_copula_family {
    FAS_COPULA_INDEPENDENCE = 0,
    FAS_COPULA_FRANK = 1,   /* param = alpha > 0 */
    FAS_COPULA_CLAYTON = 2, /* param = beta > 0 */
    FAS_COPULA_GUMBEL = 3   /* param = theta >= 1 */
} fas_copula_family;

typedef struct fas_outage_result {
    double p_out;
    double gamma_hat; /* sqrt(threshold / avg_snr) */
} fas_outage_result;

typedef struct fas_sim_result {
    int64_t trials;
    int64_t outage_count;
    double p_hat;
    double ci_half_width; /* normal-approximation 95% half width */
    uint64_t seed;
} fas_sim_result;

/* Opaque system description. */
typedef struct fas_config fas_config;

FAS_API const char* fas_version(void);
FAS_API const char* fas_status_string(int status);
FAS_API const char* fas_last_error(void);

/* Parses "independence", "frank", "clayton", "gumbel" (case-insensitive). */
FAS_API int fas_parse_family(const char* name, int* family_out);
FAS_API const char* fas_family_name(int family);

/* ---- configuration ---------------------------------------------------- */

FAS_API int fas_config_create(int64_t ports, double m, double mu, int family, double param,
                              double avg_snr, double snr_threshold, fas_config** out);
FAS_API int fas_config_clone(const fas_config* config, fas_config** out);
FAS_API void fas_config_destroy(fas_config* config);

/* Setters validate the resulting configuration and leave it unchanged on error. */
FAS_API int fas_config_set_ports(fas_config* config, int64_t ports);
FAS_API int fas_config_set_marginal(fas_config* config, double m, double mu);
FAS_API int fas_config_set_copula(fas_config* config, int family, double param);
FAS_API int fas_config_set_snr(fas_config* config, double avg_snr, double snr_threshold);
/* Switches to heterogeneous ports: `m` and `mu` hold one entry per port (count = K). */
FAS_API int fas_config_set_port_marginals(fas_config* config, const double* m, const double* mu,
                                          size_t count);

FAS_API int fas_config_get_ports(const fas_config* config, int64_t* ports);

/* ---- analysis --------------------------------------------------------- */

FAS_API int fas_gamma_hat(double snr_threshold, double avg_snr, double* out);
FAS_API int fas_cdf_h_fas(const fas_config* config, double r, double* out);
FAS_API int fas_pdf_h_fas(const fas_config* config, double r, double* out);
FAS_API int fas_outage_general(const fas_config* config, fas_outage_result* out);
FAS_API int fas_outage_closed_form(const fas_config* config, fas_outage_result* out);
/* out must hold `count` doubles; port_counts strictly increasing. */
FAS_API int fas_asymptotic_port_limit(const fas_config* config, const int64_t* port_counts,
                                      size_t count, double* out);

/* ---- Monte Carlo ------------------------------------------------------ */

/* workers = 0 uses all hardware threads. Results do not depend on `workers`. */
FAS_API int fas_simulate_outage(const fas_config* config, int64_t trials, uint64_t seed,
                                unsigned workers, fas_sim_result* out);
FAS_API int fas_empirical_cdf_h_fas(const fas_config* config, int64_t trials, uint64_t seed,
                                    unsigned workers, const double* r_grid, size_t count,
                                    double* out);

/* ---- building blocks -------------------------------------------------- */

FAS_API int fas_copula_cdf(int family, double param, const double* u, size_t d, double* out);
FAS_API int fas_copula_diagonal(int family, double param, double u, int64_t d, double* out);
FAS_API int fas_kendall_tau(int family, double param, double* out);

FAS_API int fas_marginal_pdf(double m, double mu, double r, double* out);
FAS_API int fas_marginal_cdf(double m, double mu, double r, double* out);
FAS_API int fas_marginal_quantile(double m, double mu, double p, double* out);

FAS_API int fas_log_gamma(double x, double* out);
FAS_API int fas_reg_lower_inc_gamma(double a, double x, double* out);
FAS_API int fas_inv_reg_lower_inc_gamma(double a, double p, double* out);

#ifdef __cplusplus
}
#endif

#endif /* FAS_FAS_H */
