#include "hlab/hlab.h"

#include <fstream>
#include <iostream>
#include <new>
#include <string>

#include "hlab/error.hpp"
#include "hlab/fourier.hpp"
#include "hlab/group.hpp"
#include "hlab/kernels.hpp"
#include "hlab/lab.hpp"
#include "hlab/solutions.hpp"

struct hlab_config {
    hlab::ExperimentConfig cfg;
};

struct hlab_report {
    hlab::ExperimentReport report;
    hlab::ExperimentConfig cfg;
};

struct hlab_spectrum {
    hlab::SpectralCoefficients coeffs;
};

namespace {

thread_local std::string last_error;

hlab_status to_status(hlab::ErrorCode c) { return static_cast<hlab_status>(static_cast<int>(c)); }

template <class F>
hlab_status guard(F&& f) {
    try {
        f();
        last_error.clear();
        return HLAB_OK;
    } catch (const hlab::Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return HLAB_INTERNAL_ERROR;
    } catch (const std::exception& e) {
        last_error = e.what();
        return HLAB_INTERNAL_ERROR;
    } catch (...) {
        last_error = "unknown failure";
        return HLAB_INTERNAL_ERROR;
    }
}

void need(const void* p, const char* what) {
    if (!p) hlab::fail(hlab::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

hlab::GroupPoint point(int d, const double* a) {
    need(a, "point");
    if (d < 1) hlab::fail(hlab::ErrorCode::InvalidArgument, "d must be >= 1");
    return hlab::GroupPoint(std::vector<double>(a, a + d), std::vector<double>(a + d, a + 2 * d), a[2 * d]);
}

void store(const hlab::GroupPoint& w, double* out) {
    const int d = w.dim();
    for (int j = 0; j < d; ++j) {
        out[j] = w.y()[j];
        out[d + j] = w.eta()[j];
    }
    out[2 * d] = w.s();
}

}  // namespace

extern "C" {

const char* hlab_last_error(void) { return last_error.c_str(); }

const char* hlab_status_name(hlab_status status) {
    if (status == HLAB_OK) return "ok";
    if (status == HLAB_INTERNAL_ERROR) return "internal_error";
    if (status >= HLAB_INVALID_ARGUMENT && status <= HLAB_IO_ERROR)
        return hlab::error_code_name(static_cast<hlab::ErrorCode>(status));
    return "unknown";
}

const char* hlab_version(void) { return "1.0.0"; }

hlab_status hlab_group_product(int d, const double* a, const double* b, double* out) {
    return guard([&] {
        need(out, "out");
        store(hlab::product(point(d, a), point(d, b)), out);
    });
}

hlab_status hlab_group_inverse(int d, const double* a, double* out) {
    return guard([&] {
        need(out, "out");
        store(hlab::inverse(point(d, a)), out);
    });
}

hlab_status hlab_koranyi_norm(int d, const double* a, double* out) {
    return guard([&] {
        need(out, "out");
        *out = hlab::koranyi_norm(point(d, a));
    });
}

hlab_status hlab_distance(int d, const double* a, const double* b, double* out) {
    return guard([&] {
        need(out, "out");
        *out = hlab::distance(point(d, a), point(d, b));
    });
}

hlab_status hlab_heat_kernel_gaveau(int d, double t, double rho, double s, double tol, double* out) {
    return guard([&] {
        need(out, "out");
        *out = hlab::heat_kernel_gaveau(hlab::KernelQuery::real_time(d, t, rho, s, tol)).value.real();
    });
}

hlab_status hlab_heat_kernel_series(int d, double t, double rho, double s, double tol, double* out) {
    return guard([&] {
        need(out, "out");
        *out = hlab::heat_kernel_series(hlab::KernelQuery::real_time(d, t, rho, s, tol)).value.real();
    });
}

hlab_status hlab_schrodinger_kernel(int d, double t, double rho, double s, double tol, double* re, double* im) {
    return guard([&] {
        need(re, "re");
        need(im, "im");
        const auto v = hlab::schrodinger_kernel(hlab::KernelQuery::real_time(d, t, rho, s, tol)).value;
        *re = v.real();
        *im = v.imag();
    });
}

hlab_status hlab_restricted_kernel(int d, int ell, double t, double rho, double s, double tol, double* re,
                                   double* im) {
    return guard([&] {
        need(re, "re");
        need(im, "im");
        const auto v = hlab::restricted_kernel(ell, hlab::KernelQuery::real_time(d, t, rho, s, tol)).value;
        *re = v.real();
        *im = v.imag();
    });
}

hlab_status hlab_dispersion_constant(int d, double kappa, double* out) {
    return guard([&] {
        need(out, "out");
        *out = hlab::dispersion_constant(kappa, d);
    });
}

hlab_status hlab_strip_time(int d, double kappa, double R0, double* out) {
    return guard([&] {
        need(out, "out");
        *out = hlab::strip_time(kappa, R0, d);
    });
}

hlab_status hlab_spectrum_bump(int d, double R0, int ell_max, double lambda_max, double panel_width,
                               hlab_spectrum** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        if (ell_max < 0) hlab::fail(hlab::ErrorCode::InvalidArgument, "ell_max must be >= 0");
        const auto grid = hlab::LambdaGrid::panels(lambda_max, panel_width);
        auto* s = new hlab_spectrum{hlab::analyze(hlab::bump_data(R0, d), ell_max, grid)};
        *out = s;
    });
}

void hlab_spectrum_destroy(hlab_spectrum* spec) { delete spec; }

hlab_status hlab_spectrum_norm_sq(const hlab_spectrum* spec, double* out) {
    return guard([&] {
        need(spec, "spectrum");
        need(out, "out");
        *out = spec->coeffs.norm_sq();
    });
}

hlab_status hlab_spectrum_evaluate(const hlab_spectrum* spec, double t, double rho, double s, double* re,
                                   double* im) {
    return guard([&] {
        need(spec, "spectrum");
        need(re, "re");
        need(im, "im");
        const auto v = hlab::synthesize_evolved(spec->coeffs, t, rho, s);
        *re = v.real();
        *im = v.imag();
    });
}

size_t hlab_experiment_count(void) { return hlab::experiment_names().size(); }

const char* hlab_experiment_name(size_t index) {
    const auto& n = hlab::experiment_names();
    return index < n.size() ? n[index].c_str() : nullptr;
}

hlab_status hlab_config_create(const char* experiment, hlab_config** out) {
    return guard([&] {
        need(out, "out");
        *out = nullptr;
        auto* c = new hlab_config{};
        if (experiment) c->cfg.experiment = experiment;
        *out = c;
    });
}

void hlab_config_destroy(hlab_config* cfg) { delete cfg; }

hlab_status hlab_config_set(hlab_config* cfg, const char* key, const char* value) {
    return guard([&] {
        need(cfg, "config");
        need(key, "key");
        need(value, "value");
        hlab::apply_setting(cfg->cfg, key, value);
    });
}

hlab_status hlab_config_load(hlab_config* cfg, const char* path) {
    return guard([&] {
        need(cfg, "config");
        need(path, "path");
        hlab::load_config_file(cfg->cfg, path);
    });
}

const char* hlab_config_output(const hlab_config* cfg) { return cfg ? cfg->cfg.out.c_str() : ""; }

hlab_status hlab_run(const hlab_config* cfg, hlab_report** out) {
    return guard([&] {
        need(cfg, "config");
        need(out, "out");
        *out = nullptr;
        auto rep = hlab::run(cfg->cfg);
        *out = new hlab_report{std::move(rep), cfg->cfg};
    });
}

void hlab_report_destroy(hlab_report* report) { delete report; }

size_t hlab_report_rows(const hlab_report* report) { return report ? report->report.rows.size() : 0; }

size_t hlab_report_failures(const hlab_report* report) { return report ? report->report.failures() : 0; }

int hlab_report_passed(const hlab_report* report) { return report && report->report.all_pass() ? 1 : 0; }

hlab_status hlab_report_row(const hlab_report* report, size_t index, const char** check, const char** params,
                            double* measured, double* reference, double* error, double* tolerance, int* pass) {
    return guard([&] {
        need(report, "report");
        if (index >= report->report.rows.size()) hlab::fail(hlab::ErrorCode::InvalidArgument, "row index out of range");
        const auto& r = report->report.rows[index];
        if (check) *check = r.check.c_str();
        if (params) *params = r.params.c_str();
        if (measured) *measured = r.measured;
        if (reference) *reference = r.reference;
        if (error) *error = r.error;
        if (tolerance) *tolerance = r.tolerance;
        if (pass) *pass = r.pass ? 1 : 0;
    });
}

hlab_status hlab_report_write_csv(const hlab_report* report, const char* path) {
    return guard([&] {
        need(report, "report");
        if (!path || !*path || std::string(path) == "-") {
            hlab::write_report_csv(std::cout, report->report, report->cfg);
            std::cout.flush();
            return;
        }
        std::ofstream os(path);
        if (!os) hlab::fail(hlab::ErrorCode::IoError, std::string("cannot open ") + path);
        hlab::write_report_csv(os, report->report, report->cfg);
        if (!os) hlab::fail(hlab::ErrorCode::IoError, std::string("write failed: ") + path);
    });
}

}  // extern "C"
