#pragma once

#include <complex>

#include "hlab/quadrature.hpp"
#include "hlab/special.hpp"

namespace hlab {

struct KernelQuery {
    int d = 1;
    double t = 1.0;   // real time
    cplx z{1.0, 0.0}; // complex time, used by the complex-time kernel only
    double rho = 0.0; // |Y|^2
    double s = 0.0;
    double tol = 1e-8;  // relative accuracy of the returned value
    double strip_epsilon = 1e-9;

    static KernelQuery real_time(int d, double t, double rho, double s, double tol = 1e-8);
    static KernelQuery complex_time(int d, cplx z, double rho, double s, double tol = 1e-8);
};

struct KernelValue {
    cplx value;
    double quad_error = 0.0;
    double truncation_point = 0.0;
};

KernelValue heat_kernel_gaveau(const KernelQuery& q);
KernelValue heat_kernel_series(const KernelQuery& q, const TruncationBudget& budget = {});
KernelValue schrodinger_kernel(const KernelQuery& q);
KernelValue kernel_complex_time(const KernelQuery& q);
KernelValue restricted_kernel(int ell, const KernelQuery& q);

// Phi_ell(x, r) = e^{-x/2} (sum_{k>=ell} r^k L_k^{d-1}(x)), both evaluation routes.
cplx phi_direct(int ell, cplx x, double r, int d);
cplx phi_remainder(int ell, cplx x, double r, int d);

struct DispersionConstant {
    double value;         // (4 pi)^{-Q/2} int (2tau/sinh 2tau)^d e^{kappa^2 |tau|/2}
    double signed_value;  // same with e^{kappa^2 tau/2}
    double error;
};

DispersionConstant dispersion_constants(double kappa, int d, double tol = 1e-12);
double dispersion_constant(double kappa, int d, double tol = 1e-12);

// T = (R0 / (sqrt(4d) - kappa))^2: beyond it u0 * S_t only samples the strip.
double strip_time(double kappa, double R0, int d);

}  // namespace hlab
