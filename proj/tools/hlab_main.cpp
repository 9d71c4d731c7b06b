#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "hlab/hlab.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

int report_error(hlab_status st) {
    std::fprintf(stderr, "hlab: %s: %s\n", hlab_status_name(st), hlab_last_error());
    return st == HLAB_CONFIG_ERROR || st == HLAB_INVALID_ARGUMENT || st == HLAB_DOMAIN_ERROR ? kExitConfig
                                                                                             : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical experiments for the Schrödinger and heat flows on the Heisenberg group"};
    std::string experiment, config_path;
    std::string d, kappa, ell, R0, t, tol, grid, out, seed;
    bool fast = false, list = false;

    std::string names;
    for (size_t i = 0; i < hlab_experiment_count(); ++i) names += std::string(i ? ", " : "") + hlab_experiment_name(i);

    app.add_option("experiment", experiment, "one of: " + names);
    app.add_option("--d", d, "space dimension d (H^d has dimension 2d+1)");
    app.add_option("--kappa", kappa, "ball radius factor kappa");
    app.add_option("--ell", ell, "restriction / data level ell");
    app.add_option("--R0", R0, "radius of the data support");
    app.add_option("--t", t, "comma separated times");
    app.add_option("--tol", tol, "tolerance override");
    app.add_option("--grid", grid, "convolution grid points per axis");
    app.add_option("--out", out, "CSV output file (default standard output)");
    app.add_option("--config", config_path, "key=value config file");
    app.add_option("--seed", seed, "seed for sampled points");
    app.add_flag("--fast", fast, "halve grids per axis");
    app.add_flag("--list", list, "print experiment names and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    if (list) {
        for (size_t i = 0; i < hlab_experiment_count(); ++i) std::printf("%s\n", hlab_experiment_name(i));
        return 0;
    }

    hlab_config* cfg = nullptr;
    hlab_status st = hlab_config_create(nullptr, &cfg);
    if (st != HLAB_OK) return report_error(st);

    if (!config_path.empty() && (st = hlab_config_load(cfg, config_path.c_str())) != HLAB_OK) {
        hlab_config_destroy(cfg);
        return report_error(st);
    }

    std::vector<std::pair<const char*, std::string>> overrides{
        {"experiment", experiment}, {"d", d},       {"kappa", kappa}, {"ell", ell},
        {"R0", R0},                 {"t", t},       {"tol", tol},     {"grid", grid},
        {"out", out},               {"seed", seed},
    };
    if (fast) overrides.emplace_back("fast", "1");
    for (const auto& [key, value] : overrides) {
        if (value.empty()) continue;
        if ((st = hlab_config_set(cfg, key, value.c_str())) != HLAB_OK) {
            hlab_config_destroy(cfg);
            return report_error(st);
        }
    }

    hlab_report* report = nullptr;
    st = hlab_run(cfg, &report);
    if (st != HLAB_OK) {
        hlab_config_destroy(cfg);
        return report_error(st);
    }

    st = hlab_report_write_csv(report, hlab_config_output(cfg));
    const size_t rows = hlab_report_rows(report), failures = hlab_report_failures(report);
    const bool passed = hlab_report_passed(report) != 0;
    hlab_report_destroy(report);
    hlab_config_destroy(cfg);
    if (st != HLAB_OK) return report_error(st);

    std::fprintf(stderr, "%zu rows, %zu failed: %s\n", rows, failures, passed ? "PASS" : "FAIL");
    return passed ? 0 : kExitFail;
}
