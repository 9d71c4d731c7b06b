#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hlab {

// Unset optionals take the experiment's own default.
struct ExperimentConfig {
    std::string experiment;
    int d = 1;
    std::optional<double> kappa;
    std::optional<int> ell;
    double R0 = 1.0;
    std::vector<double> t;
    std::optional<double> tol;
    std::optional<int> grid;
    std::string out;
    bool fast = false;
    std::uint64_t seed = 20240917;

    void validate() const;
};

// key=value lines, '#' starts a comment
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);
void load_config(ExperimentConfig& cfg, std::istream& is);
void load_config_file(ExperimentConfig& cfg, const std::string& path);

struct ReportRow {
    std::string check;
    std::string params;
    double measured = 0.0;
    double reference = 0.0;
    double error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ExperimentReport {
    std::string experiment;
    std::vector<ReportRow> rows;
    bool all_pass() const;
    std::size_t failures() const;
};

const std::vector<std::string>& experiment_names();
bool is_experiment(const std::string& name);

ExperimentReport run(const ExperimentConfig& cfg);

void write_report_csv(std::ostream& os, const ExperimentReport& report, const ExperimentConfig& cfg);

// q with 2/q + Q/p = Q/2; p may be infinite
double admissible_q(double p, int d);

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hlab
