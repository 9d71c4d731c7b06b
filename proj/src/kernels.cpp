#include "hlab/kernels.hpp"

#include <cmath>
#include <numbers>

#include "hlab/error.hpp"

namespace hlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAbsFloor = 1e-15;

cplx ipow(cplx base, int n) {
    cplx r = 1.0;
    for (int k = 0; k < n; ++k) r *= base;
    return r;
}

void check_common(const KernelQuery& q) {
    require(q.d >= 1, ErrorCode::InvalidArgument, "d must be >= 1");
    require(q.rho >= 0.0 && std::isfinite(q.rho), ErrorCode::InvalidArgument, "rho must be finite and >= 0");
    require(std::isfinite(q.s), ErrorCode::InvalidArgument, "s must be finite");
    require(q.tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
}

// Integral of (2tau/sinh 2tau)^d exp(i tau s/(2z) - rho tau/(2 z tanh 2tau)) over R.
QuadResult gaveau_integral(int d, cplx z, double rho, double s, double tol) {
    const cplx a = cplx(0.0, 0.5 * s) / z;
    const cplx b = -0.5 * rho / z;
    Integrand1D f;
    f.evaluate = [=](double tau) { return std::exp(d * log_sinh_ratio(tau) + a * tau + b * tau_over_tanh2(tau)); };
    Envelope env;
    env.constant = std::pow(4.0, d);
    env.power = d;
    env.rate = 2.0 * d - std::abs(a.real()) + std::max(0.0, -b.real());
    f.envelope = env;
    f.frequency = std::abs(a.imag()) + std::abs(b.imag());
    AdaptiveOptions opt;
    opt.rel_tol = tol;
    return integrate_exponential_tail(f, kAbsFloor, opt);
}

KernelValue finish(const QuadResult& r, cplx prefactor) {
    return {prefactor * r.value, std::abs(prefactor) * r.error, r.truncation_point};
}

}  // namespace

KernelQuery KernelQuery::real_time(int d, double t, double rho, double s, double tol) {
    KernelQuery q;
    q.d = d;
    q.t = t;
    q.z = cplx(t, 0.0);
    q.rho = rho;
    q.s = s;
    q.tol = tol;
    return q;
}

KernelQuery KernelQuery::complex_time(int d, cplx z, double rho, double s, double tol) {
    KernelQuery q;
    q.d = d;
    q.z = z;
    q.t = z.real();
    q.rho = rho;
    q.s = s;
    q.tol = tol;
    return q;
}

KernelValue heat_kernel_gaveau(const KernelQuery& q) {
    check_common(q);
    require(q.t > 0.0, ErrorCode::InvalidArgument, "heat kernel needs t > 0");
    const QuadResult r = gaveau_integral(q.d, cplx(q.t, 0.0), q.rho, q.s, q.tol);
    return finish(r, std::pow(4.0 * kPi * q.t, -(q.d + 1.0)));
}

namespace {

cplx log1p_c(cplx w) {
    if (std::abs(w) < 1e-4) return w * (1.0 - w * (0.5 - w * (1.0 / 3.0 - 0.25 * w)));
    return std::log(1.0 + w);
}

// lambda-integral of the ell-th spectral term, ell real >= 1 allowed for the tail.
cplx series_term(double ell, int d, double t, double rho, double s) {
    const cplx p(rho + 4.0 * t * (2.0 * ell + d), -s);
    const double c = 2.0 * rho;
    if (ell == 0.0) {
        double fact = 1.0;
        for (int k = 2; k <= d; ++k) fact *= k;
        return fact * std::pow(p, -(d + 1.0));
    }
    double gamma_ratio = 1.0;  // Gamma(ell+d) / Gamma(ell+1)
    for (int j = 1; j < d; ++j) gamma_ratio *= ell + j;
    const cplx pc = p - c;
    if (pc == 0.0) return ell == 1.0 ? gamma_ratio * std::pow(p, -(d + 2.0)) * (double(d) * p - (ell + d) * c) : 0.0;
    const cplx qlog = log1p_c(-c / p);
    return gamma_ratio * std::exp((ell - 1.0) * qlog) * std::pow(p, -(d + 2.0)) * (double(d) * p - (ell + d) * c);
}

}  // namespace

KernelValue heat_kernel_series(const KernelQuery& q, const TruncationBudget& budget) {
    check_common(q);
    budget.validate();
    require(q.t > 0.0, ErrorCode::InvalidArgument, "heat kernel needs t > 0");
    const int d = q.d;
    const double t = q.t, rho = q.rho, s = q.s;
    const int L = budget.max_terms;

    cplx sum = 0.0;
    for (int ell = 0; ell < L; ++ell) sum += series_term(ell, d, t, rho, s);

    // Euler-Maclaurin tail from ell = L in midpoint form
    const double X = L - 0.5;
    auto f = [&](double x) { return series_term(x, d, t, rho, s); };
    Integrand1D tail;
    tail.evaluate = [&](double u) { return f(X / u) * (X / (u * u)); };
    AdaptiveOptions opt;
    opt.rel_tol = 1e-14;
    opt.max_intervals = 500;
    const QuadResult integral = integrate_adaptive(tail, 0.0, 1.0, 1e-300, opt);
    const double h = 0.25;
    const cplx d1 = (f(X + h) - f(X - h)) / (2.0 * h);
    const double H = 0.5;
    const cplx d3 = (f(X + 2 * H) - 2.0 * f(X + H) + 2.0 * f(X - H) - f(X - 2 * H)) / (2.0 * H * H * H);
    const cplx tail_sum = integral.value + d1 / 24.0 - 7.0 / 5760.0 * d3;
    sum += tail_sum;

    const double cst = 2.0 * std::pow(2.0, d - 1.0) / std::pow(kPi, d + 1.0);
    const double value = cst * sum.real();
    const double err = cst * (7.0 / 5760.0 * std::abs(d3) + h * h / 6.0 * std::abs(d3) / 24.0 + integral.error);
    if (err > budget.tail_tolerance * std::abs(value))
        throw ConvergenceError(ErrorCode::BudgetExhausted, "heat series tail estimate above tolerance", value, 0.0,
                               err);
    return {cplx(value, 0.0), err, static_cast<double>(L)};
}

KernelValue schrodinger_kernel(const KernelQuery& q) {
    check_common(q);
    if (q.t == 0.0) fail(ErrorCode::ZeroTime, "Schrodinger kernel at t = 0 is not a function");
    if (std::abs(q.s) >= 4.0 * q.d * std::abs(q.t))
        fail(ErrorCode::StripViolation, "Schrodinger kernel needs |s| < 4d|t|");
    // S_t = H^2 at z = -it
    const cplx z(0.0, -q.t);
    const QuadResult r = gaveau_integral(q.d, z, q.rho, q.s, q.tol);
    return finish(r, ipow(1.0 / (4.0 * kPi * z), q.d + 1));
}

KernelValue kernel_complex_time(const KernelQuery& q) {
    check_common(q);
    require(q.z.real() > 0.0, ErrorCode::DomainError, "complex time needs Re z > 0");
    if (!(std::abs(q.z) > std::abs(q.s) / (4.0 * q.d - q.strip_epsilon)))
        fail(ErrorCode::DomainError, "complex time needs |z| > |s| / (4d - eps)");
    const QuadResult r = gaveau_integral(q.d, q.z, q.rho, q.s, q.tol);
    return finish(r, ipow(1.0 / (4.0 * kPi * q.z), q.d + 1));
}

cplx phi_direct(int ell, cplx x, double r, int d) {
    require(r >= 0.0 && r < 1.0, ErrorCode::DomainError, "Phi needs 0 <= r < 1");
    cplx partial = 0.0, rk = 1.0;
    if (ell > 0) {
        std::vector<cplx> lag(ell);
        laguerre_all(d - 1, x, lag);
        for (int k = 0; k < ell; ++k) {
            partial += rk * lag[k];
            rk *= r;
        }
    }
    return std::exp(-0.5 * x) * (laguerre_generating_closed(r, x, d - 1) - partial);
}

namespace {

// ell * int_0^1 (1-u)^{ell-1} (1-ru)^{-d-ell} e^{-xru/(1-ru)} L_ell(x/(1-ru)) du
cplx remainder_integral(int ell, cplx x, double r, int d, double* err = nullptr) {
    Integrand1D g;
    g.evaluate = [=](double u) {
        const double ru = 1.0 - r * u;
        return std::exp((ell - 1.0) * std::log1p(-u) - (d + ell) * std::log(ru) - x * (r * u / ru)) *
               laguerre(ell, d - 1, x / ru);
    };
    AdaptiveOptions opt;
    opt.rel_tol = 1e-13;
    opt.max_intervals = 200;
    QuadResult res = integrate_adaptive(g, 0.0, 1.0, 1e-300, opt);
    if (err) *err = ell * res.error;
    return double(ell) * res.value;
}

}  // namespace

cplx phi_remainder(int ell, cplx x, double r, int d) {
    require(r >= 0.0 && r < 1.0, ErrorCode::DomainError, "Phi needs 0 <= r < 1");
    if (ell == 0) return phi_direct(0, x, r, d);
    return std::exp(-0.5 * x) * std::pow(r, ell) * remainder_integral(ell, x, r, d);
}

namespace {

KernelValue restricted_at(int ell, int d, cplx z, double rho, double s, double tol) {
    const cplx a = cplx(0.0, 0.5 * s) / z;  // coefficient of tau in the phase
    const cplx xr = rho / z;                // x = xr |tau|
    const cplx b = -0.5 * rho / z;
    const double switch_tau = std::log(1e6) / (4.0 * ell);

    Integrand1D f;
    f.evaluate = [=](double tau) -> cplx {
        const double at = std::abs(tau);
        const cplx x = xr * at;
        const double r = std::exp(-4.0 * at);
        if (at < switch_tau) {
            const cplx G = std::exp(d * log_sinh_ratio(tau) + a * tau + b * tau_over_tanh2(tau));
            cplx partial = 0.0, rk = 1.0;
            std::vector<cplx> lag(ell);
            laguerre_all(d - 1, x, lag);
            for (int k = 0; k < ell; ++k) {
                partial += rk * lag[k];
                rk *= r;
            }
            const cplx P = std::pow(4.0 * at, d) * std::exp(a * tau - 2.0 * at * d - 0.5 * x) * partial;
            const cplx D = G - P;
            if (std::abs(D) >= 1e-6 * std::max(std::abs(G), std::abs(P))) return D;
        }
        // remainder form, all exponentials combined
        const cplx e = d * std::log(4.0 * at) + a * tau - 2.0 * at * d - 0.5 * x - 4.0 * ell * at;
        return std::exp(e) * remainder_integral(ell, x, r, d);
    };
    Envelope env;
    env.rate = 2.0 * (2.0 * ell + d) - std::abs(a.real());
    env.power = d + ell;
    env.constant = 10.0 * std::pow(4.0, d) * std::pow(2.0, ell + d) * std::pow(1.0 + std::abs(xr), ell);
    f.envelope = env;
    f.frequency = std::abs(a.imag()) + std::abs(b.imag());
    AdaptiveOptions opt;
    opt.rel_tol = tol;
    const QuadResult r = integrate_exponential_tail(f, kAbsFloor, opt);
    return finish(r, ipow(1.0 / (4.0 * kPi * z), d + 1));
}

}  // namespace

KernelValue restricted_kernel(int ell, const KernelQuery& q) {
    check_common(q);
    require(ell >= 0, ErrorCode::InvalidArgument, "ell must be nonnegative");
    if (ell == 0) return schrodinger_kernel(q);
    if (q.t == 0.0) fail(ErrorCode::ZeroTime, "restricted kernel at t = 0 is not a function");
    if (std::abs(q.s) >= 4.0 * (2.0 * ell + q.d) * std::abs(q.t))
        fail(ErrorCode::StripViolation, "restricted kernel needs |s| < 4(2l+d)|t|");
    return restricted_at(ell, q.d, cplx(0.0, -q.t), q.rho, q.s, q.tol);
}

DispersionConstant dispersion_constants(double kappa, int d, double tol) {
    require(d >= 1, ErrorCode::InvalidArgument, "d must be >= 1");
    require(kappa >= 0.0, ErrorCode::InvalidArgument, "kappa must be nonnegative");
    const double k2 = kappa * kappa;
    if (!(k2 < 4.0 * d)) fail(ErrorCode::DomainError, "dispersion constant diverges for kappa >= sqrt(4d)");
    Integrand1D f;
    f.evaluate = [=](double tau) { return cplx(std::exp(d * log_sinh_ratio(tau) + 0.5 * k2 * std::abs(tau)), 0.0); };
    f.envelope = Envelope{2.0 * d - 0.5 * k2, std::pow(4.0, d), double(d)};
    Integrand1D g = f;
    g.evaluate = [=](double tau) { return cplx(std::exp(d * log_sinh_ratio(tau) + 0.5 * k2 * tau), 0.0); };
    AdaptiveOptions opt;
    opt.rel_tol = tol;
    const QuadResult a = integrate_exponential_tail(f, 1e-300, opt);
    const QuadResult b = integrate_exponential_tail(g, 1e-300, opt);
    const double pre = std::pow(4.0 * kPi, -(d + 1.0));
    return {pre * a.value.real(), pre * b.value.real(), pre * a.error};
}

double dispersion_constant(double kappa, int d, double tol) {
    return dispersion_constants(kappa, d, tol).value;
}

double strip_time(double kappa, double R0, int d) {
    require(R0 > 0.0, ErrorCode::InvalidArgument, "R0 must be positive");
    require(kappa >= 0.0 && kappa < std::sqrt(4.0 * d), ErrorCode::DomainError, "kappa must be in [0, sqrt(4d))");
    const double v = R0 / (std::sqrt(4.0 * d) - kappa);
    return v * v;
}

}  // namespace hlab
