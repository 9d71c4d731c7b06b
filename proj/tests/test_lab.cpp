#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "hlab/csv.hpp"
#include "hlab/error.hpp"
#include "hlab/lab.hpp"

using namespace hlab;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("config files: comments, lists and later keys win") {
    ExperimentConfig cfg;
    std::istringstream is(
        "# dispersion run\n"
        "experiment = dispersion\n"
        "d=2\n"
        "t = 4, 8,16   # trailing comment\n"
        "kappa=0.5\n"
        "\n"
        "kappa=0.7\n"
        "fast=true\n");
    load_config(cfg, is);
    CHECK(cfg.experiment == "dispersion");
    CHECK(cfg.d == 2);
    CHECK(cfg.t == std::vector<double>{4.0, 8.0, 16.0});
    CHECK(*cfg.kappa == doctest::Approx(0.7));
    CHECK(cfg.fast);
    CHECK_FALSE(cfg.ell.has_value());
    CHECK_NOTHROW(cfg.validate());
    // command line overrides applied after the file
    apply_setting(cfg, "d", "1");
    CHECK(cfg.d == 1);
}

TEST_CASE("config errors") {
    ExperimentConfig cfg;
    CHECK(code_of([&] { apply_setting(cfg, "colour", "blue"); }) == ErrorCode::ConfigError);
    CHECK(code_of([&] { apply_setting(cfg, "d", "two"); }) == ErrorCode::ConfigError);
    CHECK(code_of([&] { apply_setting(cfg, "t", ""); }) == ErrorCode::ConfigError);
    std::istringstream bad("experiment mehler\n");
    CHECK(code_of([&] { load_config(cfg, bad); }) == ErrorCode::ConfigError);
    cfg.experiment = "no-such";
    CHECK(code_of([&] { run(cfg); }) == ErrorCode::ConfigError);
    cfg.experiment = "mehler";
    cfg.d = 0;
    CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::ConfigError);
    cfg.d = 1;
    cfg.tol = -1.0;
    CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::ConfigError);
    CHECK(code_of([&] { load_config_file(cfg, "/nonexistent/hlab.cfg"); }) == ErrorCode::ConfigError);
}

TEST_CASE("experiment registry") {
    const auto& names = experiment_names();
    for (const char* n : {"heat-equiv", "mehler", "kernel-consistency", "dispersion", "strichartz-window",
                          "concentrate", "restricted-sweep", "mkappa"})
        CHECK(is_experiment(n));
    CHECK(names.size() == 8);
    CHECK_FALSE(is_experiment("kernel"));
}

TEST_CASE("admissible pairs and slope fits") {
    CHECK(admissible_q(4.0, 1) == doctest::Approx(2.0));
    CHECK(admissible_q(std::numeric_limits<double>::infinity(), 1) == doctest::Approx(1.0));
    CHECK(admissible_q(3.0, 2) == doctest::Approx(2.0));
    CHECK(code_of([] { admissible_q(2.0, 1); }) == ErrorCode::DomainError);
    CHECK_THROWS_AS(admissible_q(1.0, 1), Error);
    CHECK(loglog_slope({1.0, 2.0, 4.0, 8.0}, {3.0, 3.0 / 8.0, 3.0 / 64.0, 3.0 / 512.0}) == doctest::Approx(-3.0));
    CHECK_THROWS_AS(loglog_slope({1.0}, {1.0}), Error);
    CHECK_THROWS_AS(loglog_slope({1.0, 2.0}, {1.0, -1.0}), Error);
}

TEST_CASE("csv writer") {
    std::ostringstream os;
    CsvWriter w(os, {"a", "b", "c"}, {{"k", "v"}});
    w.cell(0.1).cell(3).cell(std::string("x,\"y\""));
    w.end_row();
    const auto l = lines_of(os.str());
    REQUIRE(l.size() == 4);
    CHECK(l[0] == "# schema=1");
    CHECK(l[1] == "# k=v");
    CHECK(l[2] == "a,b,c");
    CHECK(l[3] == "0.1,3,\"x,\"\"y\"\"\"");
    CHECK(split_csv_line(l[3]) == std::vector<std::string>{"0.1", "3", "x,\"y\""});
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    w.cell(1.0);
    CHECK_THROWS_AS(w.end_row(), Error);

    std::ostringstream tr;
    write_trace_csv(tr, {{2.0, GroupPoint::make1(0.5, -1.0, 0.25), cplx(1.0, -2.0), "spectral"}});
    const auto t = lines_of(tr.str());
    CHECK(t.back() == "2,0.5,-1,0.25,1,-2,spectral");
}

TEST_CASE("quick experiments produce passing reports with a schema header") {
    for (const char* name : {"mehler", "mkappa", "concentrate"}) {
        ExperimentConfig cfg;
        cfg.experiment = name;
        const auto rep = run(cfg);
        CHECK(rep.experiment == name);
        CHECK(rep.rows.size() > 5);
        CHECK(rep.all_pass());
        CHECK(rep.failures() == 0);
        std::ostringstream os;
        write_report_csv(os, rep, cfg);
        const auto l = lines_of(os.str());
        CHECK(l.front() == "# schema=1");
        CHECK(l.back() == "# verdict=PASS");
        CHECK(std::find(l.begin(), l.end(), "experiment,check,params,measured,reference,error,tolerance,pass") != l.end());
    }
}

TEST_CASE("a tolerance override is honoured and can fail rows") {
    ExperimentConfig cfg;
    cfg.experiment = "mehler";
    cfg.tol = 1e-300;
    const auto rep = run(cfg);
    CHECK_FALSE(rep.all_pass());
    for (const auto& r : rep.rows) CHECK(r.tolerance == 1e-300);
}

TEST_CASE("experiments reject out-of-range parameters") {
    ExperimentConfig cfg;
    cfg.experiment = "dispersion";
    cfg.kappa = 3.0;
    CHECK(code_of([&] { run(cfg); }) == ErrorCode::ConfigError);
    cfg.experiment = "kernel-consistency";
    cfg.kappa = 1.0;
    cfg.t = {0.5};
    CHECK_THROWS_AS(run(cfg), Error);
}
