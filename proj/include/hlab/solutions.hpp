#pragma once

#include <functional>
#include <vector>

#include "hlab/fourier.hpp"
#include "hlab/kernels.hpp"

namespace hlab {

// Cauchy data whose Fourier support is the single row ell on one sign of lambda.
struct LineData {
    int ell = 0;
    std::function<double(double)> g;  // profile on (a, b), 0 < a < b
    double a = 1.0, b = 2.0;
    int lambda_sign = 1;
    int d = 1;
    void validate() const;
};

// C-infinity bump on [a, b] with unit mass.
std::function<double(double)> smooth_bump_profile(double a = 1.0, double b = 2.0);
// c (x-a)^N (b-x)^N on [a, b] with unit mass: finite smoothness at the endpoints.
std::function<double(double)> polynomial_bump_profile(int N, double a = 1.0, double b = 2.0);

LineData make_line_data(int ell, int lambda_sign = 1, int d = 1);

struct BumpData {
    double R0 = 1.0;
    GroupPoint center = GroupPoint::identity(1);
    double value(const GroupPoint& w) const;
    void validate() const;
};

RadialFunction bump_data(double R0, int d = 1);

// Vertical speed sign: lambda > 0 data moves to s - 4(2l+d)t.
double hyperplane_height(const LineData& data, double t);

cplx line_solution(const LineData& data, double t, double rho, double s, double tol = 1e-13);
SpectralCoefficients line_data_coefficients(const LineData& data, int ell_max, int panels = 16, int order = 16);

struct SpectralOptions {
    int ell_max = 256;
    LambdaGrid grid = LambdaGrid::panels(80.0, 0.05, 8);
    RadialQuadrature quad{};
};

struct RadialPoint {
    double rho, s;
};

std::vector<cplx> evolve_by_spectrum(const RadialFunction& u0, double t, const std::vector<RadialPoint>& pts,
                                     const SpectralOptions& opt = {});
std::vector<cplx> evolve_coefficients(const SpectralCoefficients& c0, double t, const std::vector<RadialPoint>& pts);

// u0 tabulated on a tensor grid over its support box; only nonzero nodes kept
struct SampledData {
    int d = 1;
    GridSpec grid;
    std::vector<double> coords;   // (2d+1) coordinates per kept node
    std::vector<cplx> weighted;   // Simpson weight times u0 at the node
    std::size_t size() const { return weighted.size(); }
};

SampledData sample_on_grid(const RadialFunction& u0, int points_per_axis);

using KernelFn = std::function<cplx(double rho, double s)>;

// int u0(v) K(v^{-1} w) dv with composite Simpson weights; K receives (|Y'|^2, s') of v^{-1} w.
cplx convolve(const SampledData& u0, const GroupPoint& w, const KernelFn& kernel);

cplx evolve_by_convolution(const SampledData& u0, double t, const GroupPoint& w, double kernel_tol = 1e-7);
cplx evolve_by_restricted_convolution(const SampledData& u0, int ell, double t, const GroupPoint& w,
                                      double kernel_tol = 1e-6);

// S_1 tabulated on [0, rho_max] x [-s_max, s_max]; S_t follows by dilation.
class ScaledKernelTable {
public:
    ScaledKernelTable(int d, double rho_max, double s_max, int n_rho, int n_s, double tol = 1e-9);
    cplx operator()(double t, double rho, double s) const;
    double rho_max() const { return rho_max_; }
    double s_max() const { return s_max_; }

private:
    cplx unit(double rho, double s) const;
    int d_;
    double rho_max_, s_max_, h_rho_, h_s_;
    int n_rho_, n_s_;
    std::vector<cplx> table_;
};

struct ConcentrationResult {
    cplx at_hyperplane;
    cplx initial_origin;
    double height;
};

ConcentrationResult concentration_probe(const LineData& data, double t);

}  // namespace hlab
