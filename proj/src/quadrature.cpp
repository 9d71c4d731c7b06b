#include "hlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

#include "hlab/error.hpp"
#include "parallel.hpp"

namespace hlab {

namespace {

constexpr double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                          0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
    double a, b;
    cplx value;
    double error;
    bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const std::function<cplx(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const cplx fc = f(c);
    cplx k = fc * wgk[7];
    cplx g = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const cplx f1 = f(c - dx), f2 = f(c + dx);
        k += wgk[j] * (f1 + f2);
        if (j % 2 == 1) g += wg[j / 2] * (f1 + f2);
    }
    k *= h;
    g *= h;
    const cplx v = k;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        fail(ErrorCode::QuadratureFailure, "integrand is not finite on the integration interval");
    return {a, b, v, std::abs(k - g)};
}

std::vector<Node> legendre_rule(int n) {
    std::vector<Node> out(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = {-x, w};
        out[n - 1 - i] = {x, w};
    }
    return out;
}

}  // namespace

const std::vector<Node>& gauss_legendre(int n) {
    require(n >= 1, ErrorCode::InvalidArgument, "Gauss-Legendre rule needs n >= 1");
    static std::mutex mu;
    static std::map<int, std::vector<Node>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, legendre_rule(n)).first;
    return it->second;
}

std::vector<Node> gauss_legendre(int n, double a, double b) {
    const auto& ref = gauss_legendre(n);
    std::vector<Node> out(ref.size());
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (std::size_t i = 0; i < ref.size(); ++i) out[i] = {c + h * ref[i].x, h * ref[i].w};
    return out;
}

QuadResult integrate_adaptive(const Integrand1D& f, double a, double b, double tol, const AdaptiveOptions& opt) {
    require(static_cast<bool>(f.evaluate), ErrorCode::InvalidArgument, "integrand has no evaluator");
    require(a < b, ErrorCode::InvalidArgument, "integration needs a < b");
    require(tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");

    double width = opt.max_width > 0.0 ? opt.max_width : b - a;
    if (f.frequency > 0.0) width = std::min(width, std::numbers::pi / f.frequency);
    const int initial = std::max(1, static_cast<int>(std::ceil((b - a) / width - 1e-9)));

    QuadResult res;
    std::priority_queue<Piece> heap;
    cplx total = 0.0;
    double total_err = 0.0;
    for (int i = 0; i < initial; ++i) {
        const double lo = a + (b - a) * i / initial;
        const double hi = i + 1 == initial ? b : a + (b - a) * (i + 1) / initial;
        Piece p = gk15(f.evaluate, lo, hi);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    res.evaluations = 15L * initial;

    auto target = [&](const cplx& v) { return std::max(tol, opt.rel_tol * std::abs(v)); };
    cplx best = total;
    double best_err = total_err;
    const int cap = std::max(opt.max_intervals, initial + 1);
    while (best_err > target(best) && static_cast<int>(heap.size()) < cap) {
        Piece p = heap.top();
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) {
            heap.push(p);
            break;
        }
        Piece l = gk15(f.evaluate, p.a, m), r = gk15(f.evaluate, m, p.b);
        res.evaluations += 30;
        total += l.value + r.value - p.value;
        total_err += l.error + r.error - p.error;
        heap.push(l);
        heap.push(r);
        if (heap.size() % 64 == 0) {
            // refresh running sums against drift
            auto copy = heap;
            total = 0.0;
            total_err = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                total_err += copy.top().error;
                copy.pop();
            }
        }
        if (total_err < best_err) {
            best = total;
            best_err = total_err;
        }
    }
    res.value = best;
    res.error = best_err;
    res.intervals = static_cast<int>(heap.size());
    if (best_err > target(best))
        throw ConvergenceError(ErrorCode::QuadratureFailure, "adaptive quadrature did not converge", best.real(),
                               best.imag(), best_err);
    return res;
}

double envelope_tail(const Envelope& env, double T) {
    const double denom = env.rate - env.power / (1.0 + T);
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    return 2.0 * env.constant * std::pow(1.0 + T, env.power) * std::exp(-env.rate * T) / denom;
}

double truncation_point(const Envelope& env, double tol) {
    require(env.rate > 0.0, ErrorCode::StripViolation, "envelope rate must be positive");
    require(tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
    if (envelope_tail(env, 0.0) < tol) return 0.0;
    double hi = 1.0;
    while (!(envelope_tail(env, hi) < tol)) {
        hi *= 2.0;
        if (hi > 1e12) fail(ErrorCode::StripViolation, "envelope tail never falls below tolerance");
    }
    double lo = 0.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (envelope_tail(env, mid) < tol) hi = mid;
        else lo = mid;
    }
    return hi;
}

QuadResult integrate_exponential_tail(const Integrand1D& f, double tol, const AdaptiveOptions& opt) {
    require(f.envelope.has_value(), ErrorCode::InvalidArgument, "integrand needs an envelope");
    require(f.envelope->rate > 0.0, ErrorCode::StripViolation,
            "nonpositive envelope rate: integral outside its convergence strip");
    double abs_tol = tol;
    if (opt.rel_tol > 0.0) {
        // magnitude estimate fixes the absolute truncation target
        const double T0 = std::max(truncation_point(*f.envelope, 1e-3 * f.envelope->constant), 1e-3);
        AdaptiveOptions loose = opt;
        loose.rel_tol = 1e-3;
        double mag = 0.0;
        try {
            mag = std::abs(integrate_adaptive(f, -T0, T0, 1e-300, loose).value);
        } catch (const ConvergenceError& e) {
            mag = std::abs(cplx(e.best_re(), e.best_im()));
        }
        abs_tol = std::max(tol, opt.rel_tol * mag);
    }
    const double T = std::max(truncation_point(*f.envelope, 0.5 * abs_tol), 1e-3);
    AdaptiveOptions inner = opt;
    inner.rel_tol = 0.0;
    QuadResult r = integrate_adaptive(f, -T, T, 0.5 * abs_tol, inner);
    r.error += envelope_tail(*f.envelope, T);
    r.truncation_point = T;
    return r;
}

void validate_grid(const GridSpec& grid) {
    require(!grid.empty(), ErrorCode::InvalidArgument, "grid needs at least one axis");
    for (const auto& ax : grid) {
        require(ax.lower < ax.upper, ErrorCode::InvalidArgument, "grid axis needs lower < upper");
        require(ax.points >= 2, ErrorCode::InvalidArgument, "grid axis needs at least 2 points");
    }
}

std::vector<double> simpson_weights(int n, double h) {
    require(n >= 2, ErrorCode::InvalidArgument, "Simpson rule needs at least 2 points");
    std::vector<double> w(n, 0.0);
    if (n == 2) {
        w[0] = w[1] = 0.5 * h;
        return w;
    }
    int m = n;  // points covered by the 1/3 rule
    if (n % 2 == 0) {
        // 3/8 rule on the last three intervals
        m = n - 3;
        const double c = 3.0 * h / 8.0;
        w[n - 4] += c;
        w[n - 3] += 3.0 * c;
        w[n - 2] += 3.0 * c;
        w[n - 1] += c;
    }
    if (m >= 3) {
        for (int i = 0; i < m; ++i) {
            const double c = (i == 0 || i == m - 1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            w[i] += c * h / 3.0;
        }
    }
    return w;
}

namespace {

cplx tensor_sum(const GroupFn& f, const GridSpec& box, int stride) {
    const int dims = static_cast<int>(box.size());
    const int d = (dims - 1) / 2;
    std::vector<std::vector<double>> nodes(dims), weights(dims);
    for (int k = 0; k < dims; ++k) {
        const int n = (box[k].points - 1) / stride + 1;
        const double h = (box[k].upper - box[k].lower) / (n - 1);
        weights[k] = simpson_weights(n, h);
        nodes[k].resize(n);
        for (int i = 0; i < n; ++i) nodes[k][i] = box[k].lower + i * h;
    }
    long total = 1;
    for (int k = 1; k < dims; ++k) total *= static_cast<long>(nodes[k].size());
    const int n0 = static_cast<int>(nodes[0].size());
    double re = 0.0, im = 0.0;
    detail::ErrorSlot slot;
#pragma omp parallel for reduction(+ : re, im) schedule(dynamic)
    for (int i0 = 0; i0 < n0; ++i0) slot.run([&] {
        std::vector<double> y(d), eta(d);
        std::vector<int> idx(dims, 0);
        double sre = 0.0, sim = 0.0;
        for (long flat = 0; flat < total; ++flat) {
            long rem = flat;
            double w = weights[0][i0];
            for (int k = dims - 1; k >= 1; --k) {
                const long nk = static_cast<long>(nodes[k].size());
                idx[k] = static_cast<int>(rem % nk);
                rem /= nk;
                w *= weights[k][idx[k]];
            }
            idx[0] = i0;
            for (int j = 0; j < d; ++j) {
                y[j] = nodes[j][idx[j]];
                eta[j] = nodes[d + j][idx[d + j]];
            }
            const cplx v = f(GroupPoint(y, eta, nodes[dims - 1][idx[dims - 1]]));
            sre += w * v.real();
            sim += w * v.imag();
        }
        re += sre;
        im += sim;
    });
    slot.rethrow();
    return {re, im};
}

}  // namespace

TensorResult tensor_integrate(const GroupFn& f, const GridSpec& box, std::optional<double> tol) {
    validate_grid(box);
    require(box.size() % 2 == 1 && box.size() >= 3, ErrorCode::DimensionMismatch,
            "tensor grid needs 2d+1 axes");
    const cplx fine = tensor_sum(f, box, 1);
    GridSpec coarse = box;
    bool ok = true;
    for (auto& ax : coarse) {
        if ((ax.points - 1) % 2 != 0 || ax.points < 5) ok = false;
        ax.points = (ax.points - 1) / 2 + 1;
    }
    cplx rough;
    if (ok) rough = tensor_sum(f, box, 2);
    else {
        for (auto& ax : coarse) ax.points = std::max(ax.points, 2);
        rough = tensor_sum(f, coarse, 1);
    }
    const double err = std::abs(fine - rough) / 15.0;
    if (tol && err > *tol)
        throw ConvergenceError(ErrorCode::QuadratureFailure,
                               "tensor grid too coarse: Richardson estimate exceeds tolerance", fine.real(),
                               fine.imag(), err);
    return {fine, err};
}

double lp_norm_on_ball(const GroupFn& f, double p, const GroupPoint& center, double R, const GridSpec& grid) {
    validate_grid(grid);
    require(p >= 1.0, ErrorCode::InvalidArgument, "p must be in [1, inf]");
    require(R > 0.0, ErrorCode::InvalidArgument, "ball radius must be positive");
    const int dims = static_cast<int>(grid.size());
    const int d = center.dim();
    require(dims == 2 * d + 1, ErrorCode::DimensionMismatch, "grid axes must match the group dimension");
    const bool sup = std::isinf(p);
    double cell = 1.0;
    long total = 1;
    for (const auto& ax : grid) {
        cell *= (ax.upper - ax.lower) / ax.points;
        total *= ax.points;
    }
    double acc = 0.0;
    long inside = 0;
    double mx = 0.0;
    std::vector<double> y(d), eta(d), x(dims);
    for (long flat = 0; flat < total; ++flat) {
        long rem = flat;
        for (int k = dims - 1; k >= 0; --k) {
            const int i = static_cast<int>(rem % grid[k].points);
            rem /= grid[k].points;
            x[k] = grid[k].lower + (i + 0.5) * (grid[k].upper - grid[k].lower) / grid[k].points;
        }
        for (int j = 0; j < d; ++j) {
            y[j] = x[j];
            eta[j] = x[d + j];
        }
        GroupPoint w(y, eta, x[dims - 1]);
        if (!in_ball(w, center, R)) continue;
        ++inside;
        const double a = std::abs(f(w));
        if (sup) mx = std::max(mx, a);
        else acc += std::pow(a, p);
    }
    if (inside == 0) fail(ErrorCode::EmptyRegion, "grid and ball do not intersect");
    return sup ? mx : std::pow(acc * cell, 1.0 / p);
}

std::vector<double> lp_norms_on_ball_radial(const std::function<cplx(double, double)>& profile,
                                            const std::vector<double>& ps, double R, int d, int n_angle, int n_s) {
    for (double p : ps) require(p >= 1.0, ErrorCode::InvalidArgument, "p must be in [1, inf]");
    require(R > 0.0, ErrorCode::InvalidArgument, "ball radius must be positive");
    require(d >= 1, ErrorCode::InvalidArgument, "d must be >= 1");
    require(n_angle >= 1 && n_s >= 1, ErrorCode::InvalidArgument, "need at least one node per axis");
    const double R2 = R * R;
    // rho = R^2 sin(phi), s = R^2 cos(phi) v, (phi, v) in [0, pi/2] x [-1, 1]
    const auto phis = gauss_legendre(n_angle, 0.0, 0.5 * std::numbers::pi);
    const auto& vs = gauss_legendre(n_s);
    double c = std::pow(std::numbers::pi, d);
    for (int k = 2; k < d; ++k) c /= k;
    std::vector<double> acc(ps.size(), 0.0);
    double mx = 0.0;
    for (const auto& ph : phis) {
        const double rho = R2 * std::sin(ph.x), cs = R2 * std::cos(ph.x);
        const double jac = R2 * std::cos(ph.x) * cs * std::pow(rho, d - 1);
        for (const auto& v : vs) {
            const double a = std::abs(profile(rho, cs * v.x));
            mx = std::max(mx, a);
            for (std::size_t k = 0; k < ps.size(); ++k)
                if (!std::isinf(ps[k])) acc[k] += ph.w * v.w * jac * std::pow(a, ps[k]);
        }
    }
    std::vector<double> out(ps.size());
    for (std::size_t k = 0; k < ps.size(); ++k)
        out[k] = std::isinf(ps[k]) ? mx : std::pow(c * acc[k], 1.0 / ps[k]);
    return out;
}

double lp_norm_on_ball_radial(const std::function<cplx(double, double)>& profile, double p, double R, int d,
                              int n_angle, int n_s) {
    return lp_norms_on_ball_radial(profile, {p}, R, d, n_angle, n_s).front();
}

}  // namespace hlab
