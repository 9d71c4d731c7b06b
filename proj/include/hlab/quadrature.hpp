#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "hlab/group.hpp"

namespace hlab {

using cplx = std::complex<double>;

// |f(tau)| <= constant * (1 + |tau|)^power * exp(-rate * |tau|)
struct Envelope {
    double rate = 0.0;
    double constant = 1.0;
    double power = 0.0;
};

struct Integrand1D {
    std::function<cplx(double)> evaluate;
    std::optional<Envelope> envelope;
    // largest angular frequency of the phase; 0 when not oscillatory
    double frequency = 0.0;
};

struct AdaptiveOptions {
    double rel_tol = 0.0;
    int max_intervals = 4000;
    // subinterval width cap; 0 means derived from Integrand1D::frequency only
    double max_width = 0.0;
};

struct QuadResult {
    cplx value;
    double error = 0.0;
    double truncation_point = 0.0;
    int intervals = 0;
    long evaluations = 0;
};

struct Node {
    double x, w;
};

// Gauss-Legendre rule on [-1, 1].
const std::vector<Node>& gauss_legendre(int n);
// Gauss-Legendre rule mapped to [a, b].
std::vector<Node> gauss_legendre(int n, double a, double b);

QuadResult integrate_adaptive(const Integrand1D& f, double a, double b, double tol,
                              const AdaptiveOptions& opt = {});

// Smallest T with the two-sided envelope tail beyond T below tol.
double truncation_point(const Envelope& env, double tol);
double envelope_tail(const Envelope& env, double T);

QuadResult integrate_exponential_tail(const Integrand1D& f, double tol, const AdaptiveOptions& opt = {});

struct Axis {
    double lower, upper;
    int points;
};
using GridSpec = std::vector<Axis>;
void validate_grid(const GridSpec& grid);

struct TensorResult {
    cplx value;
    double richardson_error;
};

using GroupFn = std::function<cplx(const GroupPoint&)>;

// Composite Simpson over the 2d+1 axes ordered y_1..y_d, eta_1..eta_d, s.
TensorResult tensor_integrate(const GroupFn& f, const GridSpec& box, std::optional<double> tol = std::nullopt);

// Composite Simpson weights for n equally spaced points (3/8 tail when n is even).
std::vector<double> simpson_weights(int n, double h);

// Cell-centred grid quadrature of |f|^p clipped to the Korányi ball.
double lp_norm_on_ball(const GroupFn& f, double p, const GroupPoint& center, double R, const GridSpec& grid);

// Same norm for a radial function about the origin, using (rho, s) polar nodes.
double lp_norm_on_ball_radial(const std::function<cplx(double, double)>& profile, double p, double R, int d,
                              int n_angle = 64, int n_s = 64);
// Several exponents from one tabulation of the profile; p = infinity gives the sup over the nodes.
std::vector<double> lp_norms_on_ball_radial(const std::function<cplx(double, double)>& profile,
                                            const std::vector<double>& ps, double R, int d, int n_angle = 64,
                                            int n_s = 64);

}  // namespace hlab
