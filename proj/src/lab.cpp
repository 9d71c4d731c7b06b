#include "hlab/lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/special_functions/trigamma.hpp>

#include "hlab/csv.hpp"
#include "hlab/error.hpp"
#include "hlab/fourier.hpp"
#include "hlab/kernels.hpp"
#include "hlab/solutions.hpp"
#include "hlab/special.hpp"
#include "parallel.hpp"

namespace hlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void config_require(bool cond, const std::string& what) {
    if (!cond) fail(ErrorCode::ConfigError, what);
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        fail(ErrorCode::ConfigError, key + ": not a number: " + v);
    }
    config_require(pos == v.size() && std::isfinite(x), key + ": not a finite number: " + v);
    return x;
}

long parse_long(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long x = 0;
    try {
        x = std::stol(v, &pos);
    } catch (const std::exception&) {
        fail(ErrorCode::ConfigError, key + ": not an integer: " + v);
    }
    config_require(pos == v.size(), key + ": not an integer: " + v);
    return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off") return false;
    fail(ErrorCode::ConfigError, key + ": not a boolean: " + v);
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string params(std::initializer_list<std::pair<const char*, double>> kv) {
    std::string out;
    for (const auto& [k, v] : kv) {
        if (!out.empty()) out += ';';
        out += k;
        out += '=';
        out += num(v);
    }
    return out;
}

ReportRow row(std::string check, std::string p, double measured, double reference, double error, double tol) {
    return {std::move(check), std::move(p), measured, reference, error, tol, std::isfinite(error) && error <= tol};
}

double rel_err(cplx a, cplx ref) {
    const double r = std::abs(ref);
    return std::abs(a - ref) / (r > 0.0 ? r : 1.0);
}

GroupPoint radial_point(int d, double rho, double s) {
    std::vector<double> y(d, 0.0), eta(d, 0.0);
    y[0] = std::sqrt(rho);
    return {y, eta, s};
}

std::vector<double> times_or(const ExperimentConfig& cfg, std::vector<double> def) {
    return cfg.t.empty() ? std::move(def) : cfg.t;
}

double kappa_for_ball(const ExperimentConfig& cfg) {
    const double kappa = cfg.kappa.value_or(1.0);
    config_require(kappa < std::sqrt(4.0 * cfg.d), "kappa must be below sqrt(4d)");
    return kappa;
}

void require_past_strip_time(const std::vector<double>& ts, double T) {
    for (double t : ts) config_require(std::abs(t) > T, "every |t| must exceed T = " + num(T));
}

// S_t on every kernel argument met when w ranges over B(0, kappa sqrt|t|), v over B(0, R0), |t| >= tmin.
ScaledKernelTable ball_kernel_table(int d, double kappa, double R0, double tmin) {
    const double h = 0.025;
    const double reach = std::pow(kappa + R0 / std::sqrt(tmin), 2.0) + 2.0 * h;
    if (!(reach + 2.0 * h < 4.0 * d))
        fail(ErrorCode::ConfigError, "t too close to T for the kernel table; use larger times");
    const int n = static_cast<int>(std::ceil(reach / h)) + 1;
    return ScaledKernelTable(d, reach, reach, n, 2 * n - 1, 1e-10);
}

struct BallSeries {
    std::vector<double> ts;
    std::vector<std::vector<double>> norms;  // per t, one entry per exponent
};

BallSeries ball_norm_series(const RadialFunction& u0, const ExperimentConfig& cfg, double kappa,
                            const std::vector<double>& ts, const std::vector<double>& ps) {
    const int d = cfg.d;
    const int n = cfg.grid.value_or(cfg.fast ? 24 : 48);
    const SampledData sd = sample_on_grid(u0, n);
    double tmin = kInf;
    for (double t : ts) tmin = std::min(tmin, std::abs(t));
    const ScaledKernelTable table = ball_kernel_table(d, kappa, cfg.R0, tmin);
    const int nq = cfg.fast ? 16 : 24;
    BallSeries out;
    for (double t : ts) {
        auto u = [&](double rho, double s) {
            return convolve(sd, radial_point(d, rho, s), [&](double r, double ss) { return table(t, r, ss); });
        };
        auto v = lp_norms_on_ball_radial(u, ps, kappa * std::sqrt(std::abs(t)), d, nq, nq);
        for (std::size_t k = 0; k < ps.size(); ++k)
            if (std::isinf(ps[k])) v[k] = std::max(v[k], std::abs(u(0.0, 0.0)));
        out.ts.push_back(std::abs(t));
        out.norms.push_back(std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------

ExperimentReport heat_equiv(const ExperimentConfig& cfg) {
    const auto ts = times_or(cfg, {0.5, 1.0, 2.0});
    for (double t : ts) config_require(t > 0.0, "heat-equiv needs t > 0");
    const double tol = cfg.tol.value_or(1e-7);
    std::vector<std::array<double, 3>> grid;
    for (double t : ts)
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) grid.push_back({i * 1.0, -4.0 + 2.0 * j, t});
    ExperimentReport rep;
    rep.rows.resize(grid.size());
    detail::ErrorSlot slot;
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < static_cast<long>(grid.size()); ++k) slot.run([&] {
        const auto [rho, s, t] = grid[k];
        const auto q = KernelQuery::real_time(cfg.d, t, rho, s, 1e-11);
        const cplx a = heat_kernel_gaveau(q).value;
        const cplx b = heat_kernel_series(q).value;
        rep.rows[k] = row("series-vs-gaveau", params({{"rho", rho}, {"s", s}, {"t", t}}), b.real(), a.real(),
                          rel_err(b, a), tol);
    });
    slot.rethrow();
    return rep;
}

ExperimentReport mehler(const ExperimentConfig& cfg) {
    const double tol = cfg.tol.value_or(1e-8);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> ux(-3.0, 3.0), ur(-0.6, 0.6), ul(0.5, 4.0), utl(0.1, 2.0),
        uy(-2.0, 2.0);
    ExperimentReport rep;
    for (int k = 0; k < 20; ++k) {
        const double x = ux(rng), xt = ux(rng), r = ur(rng);
        const double closed = mehler_closed(x, xt, r);
        const SeriesResult sum = mehler_sum(x, xt, r);
        rep.rows.push_back(row("hermite-sum", params({{"x", x}, {"xt", xt}, {"r", r}}), sum.value, closed,
                               std::abs(sum.value - closed) / std::max(1.0, std::abs(closed)), tol));
    }
    for (int k = 0; k < 20; ++k) {
        const double lambda = ul(rng), t = utl(rng) / lambda, y = uy(rng), z = uy(rng);
        const double closed = mehler_heat_closed(lambda, t, y, z);
        const SeriesResult sum = mehler_heat_sum(lambda, t, y, z);
        rep.rows.push_back(row("heat-hermite-sum",
                               params({{"lambda", lambda}, {"t", t}, {"y", y}, {"z", z}}), sum.value, closed,
                               std::abs(sum.value - closed) / std::max(1.0, std::abs(closed)), tol));
    }
    return rep;
}

ExperimentReport kernel_consistency(const ExperimentConfig& cfg) {
    const int d = cfg.d;
    const double kappa = kappa_for_ball(cfg);
    const double T = strip_time(kappa, cfg.R0, d);
    const auto ts = times_or(cfg, {1.5 * T, 2.0 * T});
    require_past_strip_time(ts, T);
    const double tol = cfg.tol.value_or(1e-2);
    const double R0 = cfg.R0, R02 = R0 * R0;

    const RadialFunction u0 = bump_data(R0, d);
    const int n = cfg.grid.value_or(cfg.fast ? 24 : 48);
    const SampledData sd = sample_on_grid(u0, n);
    const int ell_max = cfg.fast ? 128 : 256;
    const LambdaGrid grid = LambdaGrid::panels(80.0 / R02, (cfg.fast ? 0.1 : 0.05) / R02, 8, 1e-6 / R02);
    const SpectralCoefficients c = analyze(u0, ell_max, grid);

    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uy(-0.5 * R0 / std::sqrt(d), 0.5 * R0 / std::sqrt(d)), us(-R02, R02);
    struct Probe {
        double t;
        GroupPoint w;
    };
    std::vector<Probe> probes;
    for (int k = 0; k < 10; ++k) {
        std::vector<double> y(d), eta(d);
        for (auto& v : y) v = uy(rng);
        for (auto& v : eta) v = uy(rng);
        probes.push_back({ts[k % ts.size()], GroupPoint(y, eta, us(rng))});
    }
    std::vector<cplx> spec(probes.size());
    detail::ErrorSlot slot;
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < static_cast<long>(probes.size()); ++k)
        slot.run([&] { spec[k] = synthesize_evolved(c, probes[k].t, probes[k].w.rho(), probes[k].w.s()); });
    slot.rethrow();

    ExperimentReport rep;
    for (std::size_t k = 0; k < probes.size(); ++k) {
        const auto& p = probes[k];
        const cplx conv = evolve_by_convolution(sd, p.t, p.w);
        rep.rows.push_back(row("spectral-vs-convolution",
                               params({{"t", p.t}, {"rho", p.w.rho()}, {"s", p.w.s()}}), std::abs(conv),
                               std::abs(spec[k]), rel_err(spec[k], conv), tol));
    }

    const double t0 = ts.front();
    const double edge = 4.0 * d * std::abs(t0);
    const std::vector<std::pair<double, double>> strip{
        {0.0, 0.0}, {0.5, 0.25 * edge}, {1.0, -0.5 * edge}, {2.0, 0.75 * edge}, {0.25, -0.9 * edge}};
    for (const auto& [rho, s] : strip) {
        const cplx S = schrodinger_kernel(KernelQuery::real_time(d, t0, rho, s, 1e-11)).value;
        std::vector<double> diff;
        for (double eps : {1e-2, 1e-3, 1e-4}) {
            const cplx H = kernel_complex_time(KernelQuery::complex_time(d, cplx(eps, -t0), rho, s, 1e-11)).value;
            diff.push_back(std::abs(H - S));
        }
        const double worst = std::max(diff[1] / diff[0], diff[2] / diff[1]);
        rep.rows.push_back(row("complex-time-limit", params({{"t", t0}, {"rho", rho}, {"s", s}}), diff[2], diff[0],
                               worst, 1.0));
    }
    return rep;
}

ExperimentReport dispersion(const ExperimentConfig& cfg) {
    const int d = cfg.d;
    const double kappa = kappa_for_ball(cfg);
    const double T = strip_time(kappa, cfg.R0, d);
    const auto ts = times_or(cfg, {4.0, 8.0, 16.0, 32.0});
    require_past_strip_time(ts, T);
    const double half_q = d + 1.0;
    const double M = dispersion_constant(kappa, d);

    const RadialFunction u0 = bump_data(cfg.R0, d);
    const auto data_norms = lp_norms_on_ball_radial(u0.profile, {1.0, 4.0 / 3.0, 2.0}, cfg.R0, d, 96, 96);
    const BallSeries series = ball_norm_series(u0, cfg, kappa, ts, {kInf, 2.0, 4.0});

    const double R02 = cfg.R0 * cfg.R0;
    const SpectralCoefficients c = analyze(u0, 32, LambdaGrid::panels(40.0 / R02, 0.25 / R02, 8, 1e-6 / R02));
    const double mass0 = c.norm_sq();

    ExperimentReport rep;
    std::vector<double> sups;
    for (std::size_t k = 0; k < series.ts.size(); ++k) {
        const double t = series.ts[k];
        const double bound = M * std::pow(t, -half_q);
        const auto& v = series.norms[k];
        sups.push_back(v[0]);
        rep.rows.push_back(row("linf-bound", params({{"t", ts[k]}, {"kappa", kappa}}), v[0], bound * data_norms[0],
                               v[0] - bound * data_norms[0], 0.0));
        rep.rows.push_back(row("l2-mass", params({{"t", ts[k]}, {"kappa", kappa}}), v[1], data_norms[2],
                               v[1] - data_norms[2], 0.0));
        const double l4 = std::pow(bound, 0.5) * data_norms[1];
        rep.rows.push_back(row("l4-interpolated", params({{"t", ts[k]}, {"kappa", kappa}}), v[2], l4, v[2] - l4, 0.0));
        const double mass = evolve_schrodinger(c, ts[k]).norm_sq();
        rep.rows.push_back(row("spectral-mass", params({{"t", ts[k]}}), mass, mass0,
                               std::abs(mass - mass0) / mass0, 1e-14));
    }
    if (series.ts.size() >= 2) {
        const double slope = loglog_slope(series.ts, sups);
        rep.rows.push_back(row("linf-decay-exponent", params({{"kappa", kappa}}), slope, -half_q,
                               std::abs(slope + half_q), cfg.tol.value_or(0.15)));
    }
    return rep;
}

ExperimentReport strichartz_window(const ExperimentConfig& cfg) {
    const int d = cfg.d;
    const double Q = 2.0 * d + 2.0;
    const double kappa = kappa_for_ball(cfg);
    const double T = strip_time(kappa, cfg.R0, d);
    std::vector<double> ts = cfg.t;
    if (ts.empty())
        for (int k = cfg.fast ? 2 : 1; k <= 12; k += cfg.fast ? 2 : 1) ts.push_back(T * std::pow(2.0, 0.5 * k));
    require_past_strip_time(ts, T);
    config_require(ts.size() >= 2, "strichartz-window needs at least two times");
    std::sort(ts.begin(), ts.end());
    const double tol = cfg.tol.value_or(0.1);

    const RadialFunction u0 = bump_data(cfg.R0, d);
    const std::vector<double> ps{4.0, kInf};
    const BallSeries series = ball_norm_series(u0, cfg, kappa, ts, ps);

    ExperimentReport rep;
    for (std::size_t j = 0; j < ps.size(); ++j) {
        const double p = ps[j];
        std::vector<double> norms;
        for (const auto& v : series.norms) norms.push_back(v[j]);
        const double slope = loglog_slope(series.ts, norms);
        const double expected = -(Q / 2.0 - (std::isinf(p) ? 0.0 : Q / p));
        rep.rows.push_back(row("decay-slope", params({{"p", p}, {"kappa", kappa}}), slope, expected,
                               std::abs(slope - expected), tol));
        // window integral of the q-th power plus the tail the fitted power law implies
        const double q = admissible_q(p, d);
        double integral = 0.0;
        for (std::size_t k = 0; k + 1 < series.ts.size(); ++k)
            integral += 0.5 * (series.ts[k + 1] - series.ts[k]) * (std::pow(norms[k], q) + std::pow(norms[k + 1], q));
        const double margin = -1.0 - q * slope;
        const double tail = margin > 0.0 ? std::pow(norms.back(), q) * series.ts.back() / margin : kInf;
        rep.rows.push_back(row("q-integrability-margin",
                               params({{"p", p}, {"q", q}, {"window_integral", integral}, {"tail", tail}}), margin,
                               0.0, -margin, 0.0));
    }
    return rep;
}

ExperimentReport concentrate(const ExperimentConfig& cfg) {
    const int d = cfg.d;
    std::vector<int> ells{0, 1, 2};
    if (cfg.ell) ells = {*cfg.ell};
    const auto ts = times_or(cfg, {0.5, 1.0, 2.0});
    for (double t : ts) config_require(t != 0.0, "concentrate needs t != 0");
    const double tol = cfg.tol.value_or(1e-8);
    ExperimentReport rep;
    for (int ell : ells) {
        for (int sign : {1, -1}) {
            const LineData data = make_line_data(ell, sign, d);
            const cplx origin = line_solution(data, 0.0, 0.0, 0.0);
            const SpectralCoefficients c = line_data_coefficients(data, ell);
            for (double t : ts) {
                const double h = hyperplane_height(data, t);
                const cplx direct = line_solution(data, t, 0.0, h);
                rep.rows.push_back(row("hyperplane-equality",
                                       params({{"ell", ell}, {"sign", sign}, {"t", t}, {"s", h}}), direct.real(),
                                       origin.real(), rel_err(direct, origin), tol));
                const cplx spectral = evolve_coefficients(c, t, {{0.0, h}}).front();
                rep.rows.push_back(row("hyperplane-equality-spectral",
                                       params({{"ell", ell}, {"sign", sign}, {"t", t}, {"s", h}}), spectral.real(),
                                       origin.real(), rel_err(spectral, origin), tol));
            }
        }
        LineData rough = make_line_data(ell, 1, d);
        rough.g = polynomial_bump_profile(2, rough.a, rough.b);
        std::vector<double> tt, amp;
        for (double t : {8.0, 16.0, 32.0, 64.0, 128.0}) {
            tt.push_back(t);
            amp.push_back(std::abs(line_solution(rough, t, 0.0, 0.0)));
        }
        const double exponent = -loglog_slope(tt, amp);
        rep.rows.push_back(row("off-hyperplane-decay", params({{"ell", ell}, {"N", 2}, {"rho", 0}, {"s", 0}}),
                               exponent, 2.0, 2.0 - exponent, 0.0));
    }
    return rep;
}

ExperimentReport restricted_sweep(const ExperimentConfig& cfg) {
    const int d = cfg.d;
    std::vector<int> ells{0, 1, 2};
    if (cfg.ell) ells = {*cfg.ell};
    const auto ts = times_or(cfg, {1.0, 2.0, 4.0, 8.0});
    for (double t : ts) config_require(t != 0.0, "restricted-sweep needs t != 0");
    const double tol = cfg.tol.value_or(0.05);
    const double half_q = d + 1.0;
    ExperimentReport rep;
    for (int ell : ells) {
        const double wide = 4.0 * (d + 2.0 * ell);
        if (cfg.kappa) config_require((*cfg.kappa) * (*cfg.kappa) < wide, "kappa^2 must be below 4(d+2 ell)");
        if (ell == 0) {
            for (double t : ts)
                for (double rho : {0.0, 0.5, 1.0})
                    for (double sigma : {0.0, 0.5 * d, 2.0 * d}) {
                        const auto q = KernelQuery::real_time(d, t, rho, sigma * t, 1e-9);
                        const cplx a = restricted_kernel(0, q).value, b = schrodinger_kernel(q).value;
                        rep.rows.push_back(row("ell0-identity", params({{"t", t}, {"rho", rho}, {"s", sigma * t}}),
                                               std::abs(a), std::abs(b), std::abs(a - b), 0.0));
                    }
            continue;
        }
        const double k2 = cfg.kappa ? (*cfg.kappa) * (*cfg.kappa) : 0.6 * wide;
        for (double rho : {0.0, 0.5})
            for (double frac : {0.0, 0.4, 0.75, 1.0}) {
                const double sigma = frac * k2;
                double lo = kInf, hi = 0.0;
                for (double t : ts) {
                    const auto q = KernelQuery::real_time(d, t, rho, sigma * t, 1e-9);
                    const double a = std::pow(std::abs(t), half_q) * std::abs(restricted_kernel(ell, q).value);
                    lo = std::min(lo, a);
                    hi = std::max(hi, a);
                }
                rep.rows.push_back(row("scaled-bounded", params({{"ell", ell}, {"rho", rho}, {"s_over_t", sigma}}),
                                       hi, lo, (hi - lo) / hi, tol));
            }
        const double t0 = ts.front();
        for (double rho : {0.0, 1.0})
            for (double frac : {0.1, 0.5, 0.9}) {
                const double sigma = 4.0 * d + frac * (wide - 4.0 * d);
                const auto q = KernelQuery::real_time(d, t0, rho, sigma * std::abs(t0), 1e-8);
                const double a = std::abs(restricted_kernel(ell, q).value);
                const bool ok = std::isfinite(a) && a > 0.0;
                rep.rows.push_back(row("band-finite", params({{"ell", ell}, {"t", t0}, {"rho", rho}, {"s_over_t", sigma}}),
                                       a, 0.0, ok ? 0.0 : 1.0, 0.0));
            }
    }
    return rep;
}

ExperimentReport mkappa(const ExperimentConfig& cfg) {
    const int d = cfg.d;
    const double tol = cfg.tol.value_or(1e-8);
    const double edge = std::sqrt(4.0 * d);
    std::vector<double> fracs{0.0, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99, 0.995, 0.9995};
    ExperimentReport rep;
    double prev = 0.0;
    double dfact = 1.0;
    for (int k = 2; k <= d; ++k) dfact *= k;
    for (double f : fracs) {
        const double kappa = f * edge;
        const DispersionConstant m = dispersion_constants(kappa, d);
        rep.rows.push_back(row("increasing", params({{"kappa", kappa}}), m.value, prev, prev - m.value, 0.0));
        prev = m.value;
        if (d == 1) {
            const double x = 0.5 * (1.0 - 0.25 * kappa * kappa);
            const double oracle = boost::math::trigamma(x) / (32.0 * kPi * kPi);
            rep.rows.push_back(row("trigamma-oracle", params({{"kappa", kappa}}), m.value, oracle,
                                   std::abs(m.value - oracle) / oracle, tol));
        }
        if (f >= 0.9995) {
            // integrand near the endpoint: 2 4^d tau^d e^{-(2d - kappa^2/2) tau}
            const double gap = 2.0 * d - 0.5 * kappa * kappa;
            const double asym = 2.0 * std::pow(4.0, d) * dfact / std::pow(4.0 * kPi, d + 1.0) / std::pow(gap, d + 1.0);
            rep.rows.push_back(row("endpoint-asymptotic", params({{"kappa", kappa}}), m.value, asym,
                                   std::abs(m.value - asym) / asym, 1e-3));
        }
    }
    if (cfg.kappa) {
        const double kappa = *cfg.kappa;
        config_require(kappa < edge, "kappa must be below sqrt(4d)");
        const double v = dispersion_constant(kappa, d);
        rep.rows.push_back(row("requested", params({{"kappa", kappa}}), v, 0.0, std::isfinite(v) ? 0.0 : 1.0, 0.0));
    }
    bool diverged = false;
    try {
        dispersion_constant(edge, d);
    } catch (const Error& e) {
        diverged = e.code() == ErrorCode::DomainError;
    }
    rep.rows.push_back(row("endpoint-diverges", params({{"kappa", edge}}), diverged ? kInf : 0.0, kInf,
                           diverged ? 0.0 : 1.0, 0.0));
    return rep;
}

using Runner = ExperimentReport (*)(const ExperimentConfig&);

const std::vector<std::pair<std::string, Runner>>& registry() {
    static const std::vector<std::pair<std::string, Runner>> r{
        {"heat-equiv", heat_equiv},       {"mehler", mehler},
        {"kernel-consistency", kernel_consistency},
        {"dispersion", dispersion},       {"strichartz-window", strichartz_window},
        {"concentrate", concentrate},     {"restricted-sweep", restricted_sweep},
        {"mkappa", mkappa},
    };
    return r;
}

}  // namespace

void ExperimentConfig::validate() const {
    config_require(is_experiment(experiment), "unknown experiment: " + experiment);
    config_require(d >= 1 && d <= 8, "d must be in [1, 8]");
    config_require(R0 > 0.0 && std::isfinite(R0), "R0 must be positive");
    if (kappa) config_require(*kappa >= 0.0 && std::isfinite(*kappa), "kappa must be nonnegative");
    if (ell) config_require(*ell >= 0, "ell must be nonnegative");
    if (tol) config_require(*tol > 0.0, "tol must be positive");
    if (grid) config_require(*grid >= 5, "grid must be at least 5");
    for (double v : t) config_require(std::isfinite(v), "t values must be finite");
}

void apply_setting(ExperimentConfig& cfg, const std::string& key_in, const std::string& value_in) {
    const std::string key = trim(key_in), value = trim(value_in);
    if (key == "experiment") {
        cfg.experiment = value;
    } else if (key == "d") {
        cfg.d = static_cast<int>(parse_long(key, value));
    } else if (key == "kappa") {
        cfg.kappa = parse_double(key, value);
    } else if (key == "ell") {
        cfg.ell = static_cast<int>(parse_long(key, value));
    } else if (key == "R0") {
        cfg.R0 = parse_double(key, value);
    } else if (key == "t") {
        cfg.t.clear();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) cfg.t.push_back(parse_double(key, trim(item)));
        config_require(!cfg.t.empty(), "t list is empty");
    } else if (key == "tol") {
        cfg.tol = parse_double(key, value);
    } else if (key == "grid") {
        cfg.grid = static_cast<int>(parse_long(key, value));
    } else if (key == "out") {
        cfg.out = value;
    } else if (key == "fast") {
        cfg.fast = parse_bool(key, value);
    } else if (key == "seed") {
        cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
    } else {
        fail(ErrorCode::ConfigError, "unknown config key: " + key);
    }
}

void load_config(ExperimentConfig& cfg, std::istream& is) {
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        config_require(eq != std::string::npos, "config line " + std::to_string(lineno) + " lacks '='");
        apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
    }
}

void load_config_file(ExperimentConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ConfigError, "cannot open config file: " + path);
    load_config(cfg, in);
}

bool ExperimentReport::all_pass() const { return failures() == 0 && !rows.empty(); }

std::size_t ExperimentReport::failures() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ReportRow& r) { return !r.pass; }));
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [n, f] : registry()) v.push_back(n);
        return v;
    }();
    return names;
}

bool is_experiment(const std::string& name) {
    const auto& n = experiment_names();
    return std::find(n.begin(), n.end(), name) != n.end();
}

ExperimentReport run(const ExperimentConfig& cfg) {
    cfg.validate();
    for (const auto& [name, fn] : registry()) {
        if (name == cfg.experiment) {
            ExperimentReport rep = fn(cfg);
            rep.experiment = name;
            return rep;
        }
    }
    fail(ErrorCode::ConfigError, "unknown experiment: " + cfg.experiment);
}

void write_report_csv(std::ostream& os, const ExperimentReport& report, const ExperimentConfig& cfg) {
    CsvWriter w(os, {"experiment", "check", "params", "measured", "reference", "error", "tolerance", "pass"},
                {{"experiment", report.experiment},
                 {"d", std::to_string(cfg.d)},
                 {"seed", std::to_string(cfg.seed)},
                 {"fast", cfg.fast ? "1" : "0"}});
    for (const auto& r : report.rows) {
        w.cell(report.experiment).cell(r.check).cell(r.params).cell(r.measured).cell(r.reference).cell(r.error);
        w.cell(r.tolerance).cell(r.pass ? 1 : 0);
        w.end_row();
    }
    os << "# verdict=" << (report.all_pass() ? "PASS" : "FAIL") << '\n';
}

double admissible_q(double p, int d) {
    require(d >= 1, ErrorCode::InvalidArgument, "d must be >= 1");
    require(p >= 2.0, ErrorCode::InvalidArgument, "admissible pairs need p >= 2");
    const double Q = 2.0 * d + 2.0;
    const double rhs = Q / 2.0 - (std::isinf(p) ? 0.0 : Q / p);
    require(rhs > 0.0, ErrorCode::DomainError, "p = 2 admits only q = infinity");
    return 2.0 / rhs;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size() && x.size() >= 2, ErrorCode::InvalidArgument, "slope fit needs two or more points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        require(x[k] > 0.0 && y[k] > 0.0, ErrorCode::DomainError, "log-log fit needs positive data");
        const double lx = std::log(x[k]), ly = std::log(y[k]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = n * sxx - sx * sx;
    require(den > 0.0, ErrorCode::InvalidArgument, "slope fit needs distinct x");
    return (n * sxy - sx * sy) / den;
}

}  // namespace hlab
