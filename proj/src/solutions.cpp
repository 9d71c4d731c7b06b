#include "hlab/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hlab/error.hpp"
#include "hlab/special.hpp"
#include "parallel.hpp"

namespace hlab {

void LineData::validate() const {
    require(ell >= 0, ErrorCode::InvalidArgument, "ell must be nonnegative");
    require(static_cast<bool>(g), ErrorCode::InvalidArgument, "line data needs a profile");
    require(0.0 < a && a < b && std::isfinite(b), ErrorCode::InvalidArgument, "line data support needs 0 < a < b");
    require(lambda_sign == 1 || lambda_sign == -1, ErrorCode::InvalidArgument, "lambda_sign must be +1 or -1");
    require(d >= 1, ErrorCode::InvalidArgument, "d must be >= 1");
}

namespace {

double unit_mass(const std::function<double(double)>& g, double a, double b) {
    double m = 0.0;
    for (const auto& nd : gauss_legendre(64, a, b)) m += nd.w * g(nd.x);
    return m;
}

}  // namespace

std::function<double(double)> smooth_bump_profile(double a, double b) {
    require(0.0 < a && a < b, ErrorCode::InvalidArgument, "bump support needs 0 < a < b");
    auto raw = [a, b](double x) {
        const double u = (2.0 * x - a - b) / (b - a);
        return std::abs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
    };
    // many panels: the bump is flat near the ends
    double m = 0.0;
    for (int k = 0; k < 32; ++k)
        for (const auto& nd : gauss_legendre(16, a + (b - a) * k / 32, a + (b - a) * (k + 1) / 32)) m += nd.w * raw(nd.x);
    return [raw, m](double x) { return raw(x) / m; };
}

std::function<double(double)> polynomial_bump_profile(int N, double a, double b) {
    require(N >= 1, ErrorCode::InvalidArgument, "N must be >= 1");
    require(0.0 < a && a < b, ErrorCode::InvalidArgument, "bump support needs 0 < a < b");
    auto raw = [=](double x) { return (x > a && x < b) ? std::pow((x - a) * (b - x), N) : 0.0; };
    const double m = unit_mass(raw, a, b);
    return [raw, m](double x) { return raw(x) / m; };
}

LineData make_line_data(int ell, int lambda_sign, int d) {
    LineData data;
    data.ell = ell;
    data.lambda_sign = lambda_sign;
    data.d = d;
    data.g = smooth_bump_profile(1.0, 2.0);
    data.validate();
    return data;
}

void BumpData::validate() const {
    require(R0 > 0.0, ErrorCode::InvalidArgument, "R0 must be positive");
}

double BumpData::value(const GroupPoint& w) const {
    const GroupPoint v = product(inverse(center), w);
    const double q = (v.rho() * v.rho() + v.s() * v.s()) / std::pow(R0, 4);
    return q < 1.0 ? std::exp(-1.0 / (1.0 - q)) : 0.0;
}

RadialFunction bump_data(double R0, int d) {
    require(R0 > 0.0, ErrorCode::InvalidArgument, "R0 must be positive");
    require(d >= 1, ErrorCode::InvalidArgument, "d must be >= 1");
    const double R4 = std::pow(R0, 4);
    RadialFunction f;
    f.profile = [R4](double rho, double s) {
        const double q = (rho * rho + s * s) / R4;
        return cplx(q < 1.0 ? std::exp(-1.0 / (1.0 - q)) : 0.0, 0.0);
    };
    f.support_rho = R0 * R0;
    f.support_s = R0 * R0;
    f.d = d;
    return f;
}

double hyperplane_height(const LineData& data, double t) {
    return -data.lambda_sign * 4.0 * (2.0 * data.ell + data.d) * t;
}

cplx line_solution(const LineData& data, double t, double rho, double s, double tol) {
    data.validate();
    require(rho >= 0.0, ErrorCode::InvalidArgument, "rho must be nonnegative");
    const int d = data.d;
    const double speed = 4.0 * (2.0 * data.ell + d);
    Integrand1D f;
    // mu = |lambda| on (a, b); lambda = sign * mu
    f.evaluate = [&](double mu) {
        const double lambda = data.lambda_sign * mu;
        const double phase = s * lambda + t * speed * mu;
        return std::polar(wigner_radial(data.ell, lambda, rho, d) * data.g(mu) * std::pow(mu, d), phase);
    };
    f.frequency = std::abs(s) + std::abs(t) * speed;
    AdaptiveOptions opt;
    opt.rel_tol = tol;
    opt.max_intervals = 20000;
    // unit-mass data: an absolute floor of 1e-13 sits far below the values the probes compare
    return integrate_adaptive(f, data.a, data.b, 1e-13, opt).value;
}

SpectralCoefficients line_data_coefficients(const LineData& data, int ell_max, int panels, int order) {
    data.validate();
    require(ell_max >= data.ell, ErrorCode::InvalidArgument, "ell_max must cover the data row");
    std::vector<double> mu, w;
    for (int k = 0; k < panels; ++k) {
        const double lo = data.a + (data.b - data.a) * k / panels;
        const double hi = data.a + (data.b - data.a) * (k + 1) / panels;
        for (const auto& nd : gauss_legendre(order, lo, hi)) {
            mu.push_back(nd.x);
            w.push_back(nd.w);
        }
    }
    LambdaGrid grid;
    if (data.lambda_sign > 0) {
        grid.nodes = mu;
        grid.weights = w;
    } else {
        for (std::size_t k = mu.size(); k-- > 0;) {
            grid.nodes.push_back(-mu[k]);
            grid.weights.push_back(w[k]);
        }
    }
    SpectralCoefficients c(data.d, ell_max, grid);
    const double pc = plancherel_constant(data.d);
    for (std::size_t j = 0; j < grid.size(); ++j) c.at(data.ell, j) = pc * data.g(std::abs(grid.nodes[j]));
    return c;
}

std::vector<cplx> evolve_coefficients(const SpectralCoefficients& c0, double t, const std::vector<RadialPoint>& pts) {
    if (c0.grid().panel_order > 0) {
        std::vector<cplx> out(pts.size());
        detail::ErrorSlot slot;
#pragma omp parallel for schedule(dynamic)
        for (long k = 0; k < static_cast<long>(pts.size()); ++k)
            slot.run([&] { out[k] = synthesize_evolved(c0, t, pts[k].rho, pts[k].s); });
        slot.rethrow();
        return out;
    }
    const SpectralCoefficients c = t == 0.0 ? c0 : evolve_schrodinger(c0, t);
    std::vector<std::pair<double, double>> q;
    q.reserve(pts.size());
    for (const auto& p : pts) q.emplace_back(p.rho, p.s);
    return synthesize_many(c, q);
}

std::vector<cplx> evolve_by_spectrum(const RadialFunction& u0, double t, const std::vector<RadialPoint>& pts,
                                     const SpectralOptions& opt) {
    const SpectralCoefficients c = analyze(u0, opt.ell_max, opt.grid, opt.quad);
    return evolve_coefficients(c, t, pts);
}

SampledData sample_on_grid(const RadialFunction& u0, int points_per_axis) {
    u0.validate();
    require(points_per_axis >= 3, ErrorCode::InvalidArgument, "convolution grid needs at least 3 points per axis");
    const int d = u0.d;
    const int dims = 2 * d + 1;
    const double r = std::sqrt(u0.support_rho);
    SampledData out;
    out.d = d;
    for (int k = 0; k < 2 * d; ++k) out.grid.push_back({-r, r, points_per_axis});
    out.grid.push_back({-u0.support_s, u0.support_s, points_per_axis});
    std::vector<std::vector<double>> nodes(dims), weights(dims);
    for (int k = 0; k < dims; ++k) {
        const double h = (out.grid[k].upper - out.grid[k].lower) / (points_per_axis - 1);
        weights[k] = simpson_weights(points_per_axis, h);
        for (int i = 0; i < points_per_axis; ++i) nodes[k].push_back(out.grid[k].lower + i * h);
    }
    long total = 1;
    for (int k = 0; k < dims; ++k) total *= points_per_axis;
    std::vector<int> idx(dims);
    for (long flat = 0; flat < total; ++flat) {
        long rem = flat;
        double w = 1.0;
        for (int k = dims - 1; k >= 0; --k) {
            idx[k] = static_cast<int>(rem % points_per_axis);
            rem /= points_per_axis;
            w *= weights[k][idx[k]];
        }
        double rho = 0.0;
        for (int k = 0; k < 2 * d; ++k) rho += nodes[k][idx[k]] * nodes[k][idx[k]];
        const cplx v = u0.profile(rho, nodes[dims - 1][idx[dims - 1]]);
        if (v == 0.0) continue;
        for (int k = 0; k < dims; ++k) out.coords.push_back(nodes[k][idx[k]]);
        out.weighted.push_back(w * v);
    }
    return out;
}

cplx convolve(const SampledData& u0, const GroupPoint& w, const KernelFn& kernel) {
    const int d = u0.d;
    require(w.dim() == d, ErrorCode::DimensionMismatch, "query point dimension differs from data");
    const int dims = 2 * d + 1;
    const long n = static_cast<long>(u0.size());
    double re = 0.0, im = 0.0;
    detail::ErrorSlot slot;
#pragma omp parallel for reduction(+ : re, im) schedule(static)
    for (long i = 0; i < n; ++i) slot.run([&] {
        const double* v = &u0.coords[i * dims];
        // v^{-1} w
        double rho = 0.0;
        double s = w.s() - v[dims - 1];
        for (int j = 0; j < d; ++j) {
            const double dy = w.y()[j] - v[j], de = w.eta()[j] - v[d + j];
            rho += dy * dy + de * de;
            s += 2.0 * (w.eta()[j] * v[j] - v[d + j] * w.y()[j]);
        }
        const cplx k = kernel(rho, s) * u0.weighted[i];
        re += k.real();
        im += k.imag();
    });
    slot.rethrow();
    return {re, im};
}

cplx evolve_by_convolution(const SampledData& u0, double t, const GroupPoint& w, double kernel_tol) {
    if (t == 0.0) fail(ErrorCode::ZeroTime, "convolution route needs t != 0");
    const int d = u0.d;
    const double edge = 4.0 * d * std::abs(t);
    return convolve(u0, w, [&](double rho, double s) {
        if (std::abs(s) >= edge) fail(ErrorCode::StripViolation, "a convolution node leaves the strip |s| < 4d|t|");
        return schrodinger_kernel(KernelQuery::real_time(d, t, rho, s, kernel_tol)).value;
    });
}

cplx evolve_by_restricted_convolution(const SampledData& u0, int ell, double t, const GroupPoint& w,
                                      double kernel_tol) {
    if (t == 0.0) fail(ErrorCode::ZeroTime, "convolution route needs t != 0");
    const int d = u0.d;
    const double edge = 4.0 * (2.0 * ell + d) * std::abs(t);
    return convolve(u0, w, [&](double rho, double s) {
        if (std::abs(s) >= edge) fail(ErrorCode::StripViolation, "a convolution node leaves the widened strip");
        return restricted_kernel(ell, KernelQuery::real_time(d, t, rho, s, kernel_tol)).value;
    });
}

ScaledKernelTable::ScaledKernelTable(int d, double rho_max, double s_max, int n_rho, int n_s, double tol)
    : d_(d), rho_max_(rho_max), s_max_(s_max), n_rho_(n_rho), n_s_(n_s) {
    require(rho_max > 0.0 && s_max > 0.0, ErrorCode::InvalidArgument, "table bounds must be positive");
    require(s_max < 4.0 * d, ErrorCode::StripViolation, "table must stay inside the unit-time strip");
    require(n_rho >= 4 && n_s >= 4, ErrorCode::InvalidArgument, "table needs at least 4 nodes per axis");
    // one ghost layer on each side for the cubic stencil
    h_rho_ = rho_max / (n_rho - 1);
    h_s_ = 2.0 * s_max / (n_s - 1);
    require(s_max + h_s_ < 4.0 * d, ErrorCode::StripViolation, "table ghost layer leaves the unit-time strip");
    table_.resize(static_cast<std::size_t>(n_rho + 2) * (n_s + 2));
    const int total = (n_rho + 2) * (n_s + 2);
    detail::ErrorSlot slot;
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < total; ++k) slot.run([&] {
        const int i = k / (n_s + 2) - 1, j = k % (n_s + 2) - 1;
        // the kernel is a smooth function of Y, hence even in rho across 0
        const double rho = std::abs(i * h_rho_);
        const double s = -s_max + j * h_s_;
        table_[k] = schrodinger_kernel(KernelQuery::real_time(d, 1.0, rho, s, tol)).value;
    });
    slot.rethrow();
}

cplx ScaledKernelTable::unit(double rho, double s) const {
    const double x = rho / h_rho_, y = (s + s_max_) / h_s_;
    if (x < 0.0 || x > n_rho_ - 1 + 1e-9 || y < -1e-9 || y > n_s_ - 1 + 1e-9)
        fail(ErrorCode::DomainError, "kernel table queried outside its range");
    const int i = std::clamp(static_cast<int>(std::floor(x)), 0, n_rho_ - 2);
    const int j = std::clamp(static_cast<int>(std::floor(y)), 0, n_s_ - 2);
    const double fx = x - i, fy = y - j;
    auto lag = [](double f, double* w) {
        w[0] = -f * (f - 1.0) * (f - 2.0) / 6.0;
        w[1] = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
        w[2] = -(f + 1.0) * f * (f - 2.0) / 2.0;
        w[3] = (f + 1.0) * f * (f - 1.0) / 6.0;
    };
    double wx[4], wy[4];
    lag(fx, wx);
    lag(fy, wy);
    cplx acc = 0.0;
    for (int a = 0; a < 4; ++a) {
        const int ii = i - 1 + a + 1;  // shift for ghost layer
        cplx row = 0.0;
        for (int b = 0; b < 4; ++b) row += wy[b] * table_[static_cast<std::size_t>(ii) * (n_s_ + 2) + (j - 1 + b + 1)];
        acc += wx[a] * row;
    }
    return acc;
}

cplx ScaledKernelTable::operator()(double t, double rho, double s) const {
    if (t == 0.0) fail(ErrorCode::ZeroTime, "kernel at t = 0 is not a function");
    const double at = std::abs(t);
    const cplx v = unit(rho / at, s / at) * std::pow(at, -(d_ + 1.0));
    return t > 0.0 ? v : std::conj(v);
}

ConcentrationResult concentration_probe(const LineData& data, double t) {
    if (t == 0.0) fail(ErrorCode::ZeroTime, "concentration probe needs t != 0");
    const double h = hyperplane_height(data, t);
    return {line_solution(data, t, 0.0, h), line_solution(data, 0.0, 0.0, 0.0), h};
}

}  // namespace hlab
