#pragma once

#include <cmath>
#include <complex>
#include <span>

namespace hlab {

struct TruncationBudget {
    int max_terms = 512;
    double tail_tolerance = 1e-12;
    void validate() const;
};

struct LogValue {
    double log_abs;  // -inf for zero
    int sign;        // -1, 0, +1
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

struct SeriesResult {
    double value;
    int terms;
    double tail_bound;
};

// L^2-normalized Hermite function of order m.
double hermite_fn(int m, double x);
// |lambda|^{1/4} hermite_fn(m, |lambda|^{1/2} x)
double hermite_fn_scaled(int m, double lambda, double x);
// Normalized Hermite polynomial P_m = pi^{1/4} H_m e^{x^2/2}.
double hermite_poly_normalized(int m, double x);

double laguerre(int ell, int alpha, double x);
std::complex<double> laguerre(int ell, int alpha, std::complex<double> x);
// Magnitude/sign form, never overflows.
LogValue laguerre_log(int ell, int alpha, double x);
// out[k] = L_k^alpha(x) for k = 0..out.size()-1
void laguerre_all(int alpha, double x, std::span<double> out);
void laguerre_all(int alpha, std::complex<double> x, std::span<std::complex<double>> out);

double laguerre_generating_closed(double r, double x, int alpha);
std::complex<double> laguerre_generating_closed(double r, std::complex<double> x, int alpha);

double mehler_closed(double x, double xt, double r);
SeriesResult mehler_sum(double x, double xt, double r, const TruncationBudget& budget = {});

double mehler_heat_closed(double lambda, double t, double y, double z);
SeriesResult mehler_heat_sum(double lambda, double t, double y, double z,
                             const TruncationBudget& budget = {});

double tau_over_tanh2(double tau);
double sinh_ratio_pow(double tau, int d);
// log(2 tau / sinh 2 tau)
double log_sinh_ratio(double tau);

double binomial(int n, int k);

}  // namespace hlab
