#ifndef HLAB_H
#define HLAB_H

#include <stddef.h>

#if defined(HLAB_BUILDING)
#define HLAB_API __attribute__((visibility("default")))
#else
#define HLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hlab_status {
    HLAB_OK = 0,
    HLAB_INVALID_ARGUMENT = 1,
    HLAB_DIMENSION_MISMATCH = 2,
    HLAB_DOMAIN_ERROR = 3,
    HLAB_STRIP_VIOLATION = 4,
    HLAB_ZERO_TIME = 5,
    HLAB_QUADRATURE_FAILURE = 6,
    HLAB_BUDGET_EXHAUSTED = 7,
    HLAB_EMPTY_REGION = 8,
    HLAB_CONFIG_ERROR = 9,
    HLAB_IO_ERROR = 10,
    HLAB_INTERNAL_ERROR = 99
} hlab_status;

typedef struct hlab_config hlab_config;
typedef struct hlab_report hlab_report;
typedef struct hlab_spectrum hlab_spectrum;

/* Message of the last failing call on this thread; never NULL. */
HLAB_API const char* hlab_last_error(void);
HLAB_API const char* hlab_status_name(hlab_status status);
HLAB_API const char* hlab_version(void);

/* Group points are arrays (y_1..y_d, eta_1..eta_d, s) of length 2d+1. */
HLAB_API hlab_status hlab_group_product(int d, const double* a, const double* b, double* out);
HLAB_API hlab_status hlab_group_inverse(int d, const double* a, double* out);
HLAB_API hlab_status hlab_koranyi_norm(int d, const double* a, double* out);
HLAB_API hlab_status hlab_distance(int d, const double* a, const double* b, double* out);

/* Kernels take rho = |Y|^2; tol is relative. */
HLAB_API hlab_status hlab_heat_kernel_gaveau(int d, double t, double rho, double s, double tol, double* out);
HLAB_API hlab_status hlab_heat_kernel_series(int d, double t, double rho, double s, double tol, double* out);
HLAB_API hlab_status hlab_schrodinger_kernel(int d, double t, double rho, double s, double tol, double* re,
                                             double* im);
HLAB_API hlab_status hlab_restricted_kernel(int d, int ell, double t, double rho, double s, double tol, double* re,
                                            double* im);
HLAB_API hlab_status hlab_dispersion_constant(int d, double kappa, double* out);
HLAB_API hlab_status hlab_strip_time(int d, double kappa, double R0, double* out);

/* Spectral coefficients of the bump of radius R0 on a panel lambda grid. */
HLAB_API hlab_status hlab_spectrum_bump(int d, double R0, int ell_max, double lambda_max, double panel_width,
                                        hlab_spectrum** out);
HLAB_API void hlab_spectrum_destroy(hlab_spectrum* spec);
HLAB_API hlab_status hlab_spectrum_norm_sq(const hlab_spectrum* spec, double* out);
/* Schrödinger evolution to time t, evaluated at (rho, s). */
HLAB_API hlab_status hlab_spectrum_evaluate(const hlab_spectrum* spec, double t, double rho, double s, double* re,
                                            double* im);

HLAB_API size_t hlab_experiment_count(void);
HLAB_API const char* hlab_experiment_name(size_t index);

HLAB_API hlab_status hlab_config_create(const char* experiment, hlab_config** out);
HLAB_API void hlab_config_destroy(hlab_config* cfg);
/* Keys: experiment d kappa ell R0 t tol grid out fast seed. */
HLAB_API hlab_status hlab_config_set(hlab_config* cfg, const char* key, const char* value);
HLAB_API hlab_status hlab_config_load(hlab_config* cfg, const char* path);
/* Output path set by the config, "" when unset. */
HLAB_API const char* hlab_config_output(const hlab_config* cfg);

HLAB_API hlab_status hlab_run(const hlab_config* cfg, hlab_report** out);
HLAB_API void hlab_report_destroy(hlab_report* report);
HLAB_API size_t hlab_report_rows(const hlab_report* report);
HLAB_API size_t hlab_report_failures(const hlab_report* report);
HLAB_API int hlab_report_passed(const hlab_report* report);
HLAB_API hlab_status hlab_report_row(const hlab_report* report, size_t index, const char** check,
                                     const char** params, double* measured, double* reference, double* error,
                                     double* tolerance, int* pass);
/* path NULL or "" or "-" writes to standard output. */
HLAB_API hlab_status hlab_report_write_csv(const hlab_report* report, const char* path);

#ifdef __cplusplus
}
#endif

#endif
