#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "hlab/quadrature.hpp"

namespace hlab {

// f(Y, s) = profile(|Y|^2, s), negligible outside [0, support_rho] x [-support_s, support_s].
struct RadialFunction {
    std::function<cplx(double, double)> profile;
    double support_rho = 1.0;
    double support_s = 1.0;
    int d = 1;
    void validate() const;
};

struct FrequencyPoint {
    int ell = 0;
    double lambda = 1.0;
};

// Signed quadrature grid in lambda, 0 excluded, weights for d(lambda).
struct LambdaGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    // set for panel grids: consecutive groups of panel_order nodes per panel
    std::vector<std::pair<double, double>> panel_bounds;
    int panel_order = 0;

    // +-[lmin, lmax], n points per sign, trapezoid weights in log(lambda)
    static LambdaGrid geometric(double lmin = 1e-3, double lmax = 50.0, int per_sign = 400);
    // Gauss-Legendre panels on +-(0, lmax]: panels growing geometrically from lmin until they
    // reach `width`, then panels of `width`
    static LambdaGrid panels(double lmax, double width, int order = 8, double lmin = 1e-6, double growth = 1.1);
    // only positive (sign = +1) or negative (sign = -1) half of a grid
    LambdaGrid half(int sign) const;
    std::size_t size() const { return nodes.size(); }
    void validate() const;
};

struct RadialQuadrature {
    int n_rho = 192;
    int n_s = 128;
};

class SpectralCoefficients {
public:
    SpectralCoefficients() = default;
    SpectralCoefficients(int d, int ell_max, LambdaGrid grid);

    int d() const { return d_; }
    int ell_max() const { return ell_max_; }
    const LambdaGrid& grid() const { return grid_; }
    std::size_t columns() const { return grid_.size(); }
    cplx& at(int ell, std::size_t j) { return values_[static_cast<std::size_t>(ell) * grid_.size() + j]; }
    const cplx& at(int ell, std::size_t j) const { return values_[static_cast<std::size_t>(ell) * grid_.size() + j]; }
    std::vector<cplx>& values() { return values_; }
    const std::vector<cplx>& values() const { return values_; }

    // sum_ell binom(ell+d-1, ell) int |c|^2 |lambda|^d d(lambda)
    double norm_sq() const;

private:
    int d_ = 1;
    int ell_max_ = 0;
    LambdaGrid grid_;
    std::vector<cplx> values_;
};

double plancherel_constant(int d);    // pi^{d+1} / 2^{d-1}
double radial_measure_constant(int d);  // pi^d / (d-1)!

double wigner_radial(int ell, double lambda, double rho, int d);
cplx wigner_general_d1(int n, int m, double lambda, double y, double eta, double tol = 1e-10);

cplx forward_radial(const RadialFunction& f, const FrequencyPoint& freq, const RadialQuadrature& quad = {});
SpectralCoefficients analyze(const RadialFunction& f, int ell_max, const LambdaGrid& grid,
                             const RadialQuadrature& quad = {});
cplx synthesize(const SpectralCoefficients& c, double rho, double s);
// synthesize(evolve_schrodinger(c, t)) with each panel of a panel grid subdivided until the
// multiplier phase is resolved; coefficients are interpolated inside a panel.
cplx synthesize_evolved(const SpectralCoefficients& c, double t, double rho, double s);
std::vector<cplx> synthesize_many(const SpectralCoefficients& c, const std::vector<std::pair<double, double>>& pts);

double sublaplacian_symbol(const FrequencyPoint& freq, int d);
SpectralCoefficients evolve_schrodinger(const SpectralCoefficients& c, double t);
SpectralCoefficients evolve_heat(const SpectralCoefficients& c, double t);
SpectralCoefficients vertical_translate_spectral(const SpectralCoefficients& c, double s0);
SpectralCoefficients project_component(const SpectralCoefficients& c, int ell);
// keep rows ell' >= ell
SpectralCoefficients project_tail(const SpectralCoefficients& c, int ell);

void write_coefficients_csv(std::ostream& os, const SpectralCoefficients& c);
SpectralCoefficients read_coefficients_csv(std::istream& is, int d);

}  // namespace hlab
