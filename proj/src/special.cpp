#include "hlab/special.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

#include "hlab/error.hpp"

namespace hlab {

namespace {

constexpr double kRescale = 1e150;

// Cramér: |hermite_fn(m, x)| <= pi^{-1/4}
const double kCramer = std::pow(std::numbers::pi, -0.25);

template <class T>
T laguerre_recurrence(int ell, int alpha, T x) {
    T prev(1.0);
    if (ell == 0) return prev;
    T cur = T(1.0 + alpha) - x;
    for (int k = 1; k < ell; ++k) {
        T next = ((T(2.0 * k + 1.0 + alpha) - x) * cur - T(k + alpha) * prev) / T(k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

template <class T>
void laguerre_fill(int alpha, T x, std::span<T> out) {
    if (out.empty()) return;
    out[0] = T(1.0);
    if (out.size() == 1) return;
    out[1] = T(1.0 + alpha) - x;
    for (std::size_t k = 1; k + 1 < out.size(); ++k) {
        const double kk = static_cast<double>(k);
        out[k + 1] = ((T(2.0 * kk + 1.0 + alpha) - x) * out[k] - T(kk + alpha) * out[k - 1]) / T(kk + 1.0);
    }
}

}  // namespace

void TruncationBudget::validate() const {
    require(max_terms >= 1, ErrorCode::InvalidArgument, "max_terms must be >= 1");
    require(tail_tolerance > 0.0, ErrorCode::InvalidArgument, "tail_tolerance must be positive");
}

double hermite_fn(int m, double x) {
    require(m >= 0, ErrorCode::InvalidArgument, "hermite order must be nonnegative");
    // recurrence on h_k / h_0 with a running log scale
    double log_scale = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
    double prev = 0.0, cur = 1.0;
    for (int k = 0; k < m; ++k) {
        double next = std::sqrt(2.0 / (k + 1.0)) * x * cur - std::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescale) {
            prev /= kRescale;
            cur /= kRescale;
            log_scale += std::log(kRescale);
        }
    }
    if (cur == 0.0) return 0.0;
    return cur * std::exp(log_scale);
}

double hermite_fn_scaled(int m, double lambda, double x) {
    require(lambda != 0.0, ErrorCode::InvalidArgument, "lambda must be nonzero");
    const double a = std::abs(lambda);
    return std::pow(a, 0.25) * hermite_fn(m, std::sqrt(a) * x);
}

double hermite_poly_normalized(int m, double x) {
    require(m >= 0, ErrorCode::InvalidArgument, "hermite order must be nonnegative");
    double prev = 0.0, cur = 1.0;
    for (int k = 0; k < m; ++k) {
        double next = std::sqrt(2.0 / (k + 1.0)) * x * cur - std::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double laguerre(int ell, int alpha, double x) {
    require(ell >= 0 && alpha >= 0, ErrorCode::InvalidArgument, "laguerre indices must be nonnegative");
    if (ell > 150) return laguerre_log(ell, alpha, x).value();
    return laguerre_recurrence(ell, alpha, x);
}

std::complex<double> laguerre(int ell, int alpha, std::complex<double> x) {
    require(ell >= 0 && alpha >= 0, ErrorCode::InvalidArgument, "laguerre indices must be nonnegative");
    return laguerre_recurrence(ell, alpha, x);
}

LogValue laguerre_log(int ell, int alpha, double x) {
    require(ell >= 0 && alpha >= 0, ErrorCode::InvalidArgument, "laguerre indices must be nonnegative");
    double log_scale = 0.0;
    double prev = 1.0;
    double cur = ell == 0 ? 1.0 : 1.0 + alpha - x;
    for (int k = 1; k < ell; ++k) {
        double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescale) {
            prev /= kRescale;
            cur /= kRescale;
            log_scale += std::log(kRescale);
        }
    }
    if (cur == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    return {log_scale + std::log(std::abs(cur)), cur > 0 ? 1 : -1};
}

void laguerre_all(int alpha, double x, std::span<double> out) {
    laguerre_fill(alpha, x, out);
}

void laguerre_all(int alpha, std::complex<double> x, std::span<std::complex<double>> out) {
    laguerre_fill(alpha, x, out);
}

double laguerre_generating_closed(double r, double x, int alpha) {
    require(std::abs(r) < 1.0, ErrorCode::DomainError, "generating function needs |r| < 1");
    return std::exp(-r * x / (1.0 - r)) * std::pow(1.0 - r, -(alpha + 1.0));
}

std::complex<double> laguerre_generating_closed(double r, std::complex<double> x, int alpha) {
    require(std::abs(r) < 1.0, ErrorCode::DomainError, "generating function needs |r| < 1");
    return std::exp(-r * x / (1.0 - r)) * std::pow(1.0 - r, -(alpha + 1.0));
}

double mehler_closed(double x, double xt, double r) {
    require(std::abs(r) < 1.0, ErrorCode::DomainError, "Mehler formula needs |r| < 1");
    const double q = 1.0 - r * r;
    return std::exp((2.0 * x * xt * r - (x * x + xt * xt) * r * r) / q) / std::sqrt(q);
}

SeriesResult mehler_sum(double x, double xt, double r, const TruncationBudget& budget) {
    budget.validate();
    require(std::abs(r) < 1.0, ErrorCode::DomainError, "Mehler series needs |r| < 1");
    const double ar = std::abs(r);
    // |P_m(x)| <= e^{x^2/2} by Cramér's inequality
    const double envelope = std::exp(0.5 * (x * x + xt * xt));
    double px0 = 0.0, px1 = 1.0, pt0 = 0.0, pt1 = 1.0;
    double sum = 0.0, rm = 1.0;
    for (int m = 0; m < budget.max_terms; ++m) {
        sum += rm * px1 * pt1;
        rm *= r;
        const double tail = envelope * std::pow(ar, m + 1) / (1.0 - ar);
        if (tail < budget.tail_tolerance) return {sum, m + 1, tail};
        const double a = std::sqrt(2.0 / (m + 1.0)), b = std::sqrt(m / (m + 1.0));
        const double nx = a * x * px1 - b * px0;
        const double nt = a * xt * pt1 - b * pt0;
        px0 = px1;
        px1 = nx;
        pt0 = pt1;
        pt1 = nt;
    }
    const double tail = envelope * std::pow(ar, budget.max_terms) / (1.0 - ar);
    throw ConvergenceError(ErrorCode::BudgetExhausted, "Mehler series did not reach its tail tolerance", sum,
                           0.0, tail);
}

double mehler_heat_closed(double lambda, double t, double y, double z) {
    require(lambda > 0.0 && t > 0.0, ErrorCode::InvalidArgument, "lambda and t must be positive");
    const double tl = t * lambda;
    const double th = std::tanh(tl);
    return std::sqrt(lambda / (-std::expm1(-4.0 * tl)) / std::numbers::pi) *
           std::exp(-lambda * z * z * th - lambda * y * y / th);
}

SeriesResult mehler_heat_sum(double lambda, double t, double y, double z, const TruncationBudget& budget) {
    budget.validate();
    require(lambda > 0.0 && t > 0.0, ErrorCode::InvalidArgument, "lambda and t must be positive");
    const double r = std::exp(-2.0 * t * lambda);
    const double sl = std::sqrt(lambda);
    const double a = sl * (z - y), b = sl * (z + y);
    const double envelope = sl * kCramer * kCramer;
    // orthonormal recurrence on both arguments, shared Gaussian factor
    double log_scale = -0.5 * (a * a + b * b) - 0.5 * std::log(std::numbers::pi);
    double ha0 = 0.0, ha1 = 1.0, hb0 = 0.0, hb1 = 1.0;
    double sum = 0.0, rm = 1.0;
    for (int m = 0; m < budget.max_terms; ++m) {
        sum += rm * ha1 * hb1 * std::exp(log_scale);
        rm *= r;
        const double tail = envelope * rm / (1.0 - r);
        if (tail < budget.tail_tolerance) return {sl * sum, m + 1, tail};
        const double c1 = std::sqrt(2.0 / (m + 1.0)), c0 = std::sqrt(m / (m + 1.0));
        const double na = c1 * a * ha1 - c0 * ha0;
        const double nb = c1 * b * hb1 - c0 * hb0;
        ha0 = ha1;
        ha1 = na;
        hb0 = hb1;
        hb1 = nb;
        if (std::abs(ha1 * hb1) > kRescale) {
            ha0 /= 1e75;
            ha1 /= 1e75;
            hb0 /= 1e75;
            hb1 /= 1e75;
            log_scale += std::log(kRescale);
        }
    }
    const double tail = envelope * std::pow(r, budget.max_terms) / (1.0 - r);
    throw ConvergenceError(ErrorCode::BudgetExhausted, "Hermite heat series did not reach its tail tolerance",
                           sl * sum, 0.0, tail);
}

double tau_over_tanh2(double tau) {
    const double a = std::abs(tau);
    if (a < 1e-3) {
        const double t2 = tau * tau;
        return 0.5 * (1.0 + t2 * (4.0 / 3.0 - t2 * 16.0 / 45.0));
    }
    if (a > 20.0) return a;
    return a / std::tanh(2.0 * a);
}

namespace {

// (sinh a - a) / a for 0 <= a < 1, free of cancellation
double sinh_excess(double a) {
    const double x2 = a * a;
    double term = x2 / 6.0, sum = 0.0;
    for (int k = 1; k < 20 && term > 1e-18 * sum; ++k) {
        sum += term;
        term *= x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
    return sum;
}

}  // namespace

double log_sinh_ratio(double tau) {
    const double a = 2.0 * std::abs(tau);
    if (a < 1.0) return -std::log1p(sinh_excess(a));
    return std::log(2.0 * a) - a - std::log1p(-std::exp(-2.0 * a));
}

double sinh_ratio_pow(double tau, int d) {
    require(d >= 1, ErrorCode::InvalidArgument, "d must be >= 1");
    const double a = 2.0 * std::abs(tau);
    if (a < 1.0) {
        const double r = 1.0 / (1.0 + sinh_excess(a));
        return d == 1 ? r : std::pow(r, d);
    }
    return std::exp(d * log_sinh_ratio(tau));
}

double binomial(int n, int k) {
    require(n >= 0 && k >= 0 && k <= n, ErrorCode::InvalidArgument, "binomial needs 0 <= k <= n");
    k = std::min(k, n - k);
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r < 9e15 ? std::round(r) : r;
}

}  // namespace hlab
