#include "hlab/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "hlab/error.hpp"
#include "hlab/special.hpp"
#include "parallel.hpp"

namespace hlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

void RadialFunction::validate() const {
    require(static_cast<bool>(profile), ErrorCode::InvalidArgument, "radial function has no profile");
    require(support_rho > 0.0 && support_s > 0.0, ErrorCode::InvalidArgument, "support bounds must be positive");
    require(d >= 1, ErrorCode::InvalidArgument, "d must be >= 1");
}

LambdaGrid LambdaGrid::geometric(double lmin, double lmax, int per_sign) {
    require(lmin > 0.0 && lmax > lmin, ErrorCode::InvalidArgument, "geometric grid needs 0 < lmin < lmax");
    require(per_sign >= 2, ErrorCode::InvalidArgument, "geometric grid needs at least 2 points per sign");
    const double step = std::log(lmax / lmin) / (per_sign - 1);
    std::vector<double> pos(per_sign), w(per_sign);
    for (int k = 0; k < per_sign; ++k) {
        pos[k] = lmin * std::exp(step * k);
        w[k] = pos[k] * step * ((k == 0 || k == per_sign - 1) ? 0.5 : 1.0);
    }
    LambdaGrid g;
    for (int k = per_sign - 1; k >= 0; --k) {
        g.nodes.push_back(-pos[k]);
        g.weights.push_back(w[k]);
    }
    for (int k = 0; k < per_sign; ++k) {
        g.nodes.push_back(pos[k]);
        g.weights.push_back(w[k]);
    }
    return g;
}

LambdaGrid LambdaGrid::panels(double lmax, double width, int order, double lmin, double growth) {
    require(lmax > 0.0 && width > 0.0 && lmin > 0.0, ErrorCode::InvalidArgument, "panel grid needs positive sizes");
    require(order >= 1, ErrorCode::InvalidArgument, "panel order must be >= 1");
    require(growth > 1.0, ErrorCode::InvalidArgument, "panel growth factor must exceed 1");
    std::vector<double> edges{0.0};
    double e = std::min(lmin, lmax);
    while (e < lmax && e * (growth - 1.0) < width) {
        edges.push_back(e);
        e *= growth;
    }
    e = edges.back();
    while (e < lmax) {
        e = std::min(lmax, e + width);
        if (lmax - e < 1e-9 * width) e = lmax;
        edges.push_back(e);
    }
    std::vector<std::pair<double, double>> pan;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k)
        if (edges[k + 1] > edges[k]) pan.emplace_back(edges[k], edges[k + 1]);
    LambdaGrid g;
    g.panel_order = order;
    for (std::size_t k = pan.size(); k-- > 0;) {
        const auto nd = gauss_legendre(order, -pan[k].second, -pan[k].first);
        for (const auto& n : nd) {
            g.nodes.push_back(n.x);
            g.weights.push_back(n.w);
        }
        g.panel_bounds.emplace_back(-pan[k].second, -pan[k].first);
    }
    for (const auto& p : pan) {
        for (const auto& n : gauss_legendre(order, p.first, p.second)) {
            g.nodes.push_back(n.x);
            g.weights.push_back(n.w);
        }
        g.panel_bounds.push_back(p);
    }
    return g;
}

LambdaGrid LambdaGrid::half(int sign) const {
    LambdaGrid g;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        if ((sign > 0 && nodes[j] > 0.0) || (sign < 0 && nodes[j] < 0.0)) {
            g.nodes.push_back(nodes[j]);
            g.weights.push_back(weights[j]);
        }
    }
    if (panel_order > 0) {
        g.panel_order = panel_order;
        for (const auto& p : panel_bounds)
            if ((sign > 0 && p.first >= 0.0) || (sign < 0 && p.second <= 0.0)) g.panel_bounds.push_back(p);
    }
    return g;
}

void LambdaGrid::validate() const {
    require(!nodes.empty() && nodes.size() == weights.size(), ErrorCode::InvalidArgument,
            "lambda grid needs matching nodes and weights");
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        require(nodes[j] != 0.0 && std::isfinite(nodes[j]), ErrorCode::InvalidArgument,
                "lambda grid must avoid 0");
        require(weights[j] > 0.0, ErrorCode::InvalidArgument, "lambda weights must be positive");
        if (j > 0) require(nodes[j] > nodes[j - 1], ErrorCode::InvalidArgument, "lambda grid must be increasing");
    }
    if (panel_order > 0)
        require(panel_bounds.size() * static_cast<std::size_t>(panel_order) == nodes.size(),
                ErrorCode::InvalidArgument, "panel layout does not match the nodes");
}

SpectralCoefficients::SpectralCoefficients(int d, int ell_max, LambdaGrid grid)
    : d_(d), ell_max_(ell_max), grid_(std::move(grid)) {
    require(d >= 1, ErrorCode::InvalidArgument, "d must be >= 1");
    require(ell_max >= 0, ErrorCode::InvalidArgument, "ell_max must be >= 0");
    grid_.validate();
    values_.assign(static_cast<std::size_t>(ell_max + 1) * grid_.size(), cplx(0.0));
}

double SpectralCoefficients::norm_sq() const {
    double total = 0.0;
    for (int ell = 0; ell <= ell_max_; ++ell) {
        const double mult = binomial(ell + d_ - 1, ell);
        for (std::size_t j = 0; j < grid_.size(); ++j)
            total += mult * grid_.weights[j] * std::pow(std::abs(grid_.nodes[j]), d_) * std::norm(at(ell, j));
    }
    return total;
}

double plancherel_constant(int d) {
    return std::pow(kPi, d + 1) / std::pow(2.0, d - 1);
}

double radial_measure_constant(int d) {
    double c = std::pow(kPi, d);
    for (int k = 2; k < d; ++k) c /= k;
    return c;
}

double wigner_radial(int ell, double lambda, double rho, int d) {
    require(lambda != 0.0, ErrorCode::InvalidArgument, "lambda must be nonzero");
    require(rho >= 0.0, ErrorCode::InvalidArgument, "rho must be nonnegative");
    const double a = std::abs(lambda) * rho;
    if (ell > 150) {
        const LogValue v = laguerre_log(ell, d - 1, 2.0 * a);
        return v.sign == 0 ? 0.0 : v.sign * std::exp(v.log_abs - a);
    }
    return std::exp(-a) * laguerre(ell, d - 1, 2.0 * a);
}

cplx wigner_general_d1(int n, int m, double lambda, double y, double eta, double tol) {
    require(lambda != 0.0, ErrorCode::InvalidArgument, "lambda must be nonzero");
    require(n >= 0 && m >= 0, ErrorCode::InvalidArgument, "Hermite indices must be nonnegative");
    const double al = std::abs(lambda);
    const double sl = std::sqrt(al);
    // beyond z0 both Hermite factors are past their turning points
    const double z0 = std::abs(y) + (std::sqrt(2.0 * std::max(n, m) + 1.0) + 3.0) / sl;
    Integrand1D f;
    f.evaluate = [=](double z) {
        return std::polar(hermite_fn_scaled(n, lambda, y + z) * hermite_fn_scaled(m, lambda, -y + z),
                          2.0 * lambda * eta * z);
    };
    // e^{-al (|z| - z0)^2} <= e^{al (z0 + 1/4)} e^{-al |z|}
    f.envelope = Envelope{al, 10.0 * sl / std::sqrt(kPi) * std::exp(al * (z0 + 0.25)), 0.0};
    f.frequency = 2.0 * std::abs(lambda * eta) + 2.0 * sl * std::sqrt(2.0 * std::max(n, m) + 1.0);
    return integrate_exponential_tail(f, tol).value;
}

namespace {

struct Tabulated {
    std::vector<Node> rho, s;
    std::vector<cplx> values;  // (i_rho, i_s)
};

Tabulated tabulate(const RadialFunction& f, const RadialQuadrature& quad) {
    f.validate();
    require(quad.n_rho >= 2 && quad.n_s >= 2, ErrorCode::InvalidArgument, "radial quadrature too small");
    Tabulated t;
    t.rho = gauss_legendre(quad.n_rho, 0.0, f.support_rho);
    t.s = gauss_legendre(quad.n_s, -f.support_s, f.support_s);
    t.values.resize(t.rho.size() * t.s.size());
    const int nr = static_cast<int>(t.rho.size());
    detail::ErrorSlot slot;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < nr; ++i) slot.run([&] {
        for (std::size_t k = 0; k < t.s.size(); ++k) t.values[i * t.s.size() + k] = f.profile(t.rho[i].x, t.s[k].x);
    });
    slot.rethrow();
    return t;
}

// Coefficients for all ell at one lambda.
void analyze_column(const Tabulated& tab, int d, double lambda, int ell_max, std::vector<cplx>& out) {
    const std::size_t nr = tab.rho.size(), ns = tab.s.size();
    std::vector<cplx> phase(ns);
    for (std::size_t k = 0; k < ns; ++k) phase[k] = std::polar(tab.s[k].w, -tab.s[k].x * lambda);
    const double al = std::abs(lambda);
    std::vector<cplx> g(nr);
    std::vector<double> l0(nr), l1(nr), xs(nr);
    for (std::size_t i = 0; i < nr; ++i) {
        cplx acc = 0.0;
        const cplx* row = &tab.values[i * ns];
        for (std::size_t k = 0; k < ns; ++k) acc += row[k] * phase[k];
        const double rho = tab.rho[i].x;
        g[i] = acc * (tab.rho[i].w * std::pow(rho, d - 1) * std::exp(-al * rho));
        xs[i] = 2.0 * al * rho;
        l0[i] = 1.0;
        l1[i] = d - xs[i];  // L_1^{d-1}
    }
    const double c = radial_measure_constant(d);
    const int alpha = d - 1;
    out.assign(ell_max + 1, cplx(0.0));
    for (int ell = 0; ell <= ell_max; ++ell) {
        cplx acc = 0.0;
        const std::vector<double>& cur = ell == 0 ? l0 : l1;
        for (std::size_t i = 0; i < nr; ++i) acc += cur[i] * g[i];
        out[ell] = acc * (c / binomial(ell + d - 1, ell));
        if (ell >= 1) {
            // advance: l0 <- L_ell, l1 <- L_{ell+1}
            for (std::size_t i = 0; i < nr; ++i) {
                const double next = ((2.0 * ell + 1.0 + alpha - xs[i]) * l1[i] - (ell + alpha) * l0[i]) / (ell + 1.0);
                l0[i] = l1[i];
                l1[i] = next;
            }
        }
    }
}

}  // namespace

cplx forward_radial(const RadialFunction& f, const FrequencyPoint& freq, const RadialQuadrature& quad) {
    require(freq.lambda != 0.0, ErrorCode::InvalidArgument, "lambda must be nonzero");
    require(freq.ell >= 0, ErrorCode::InvalidArgument, "ell must be nonnegative");
    const Tabulated tab = tabulate(f, quad);
    std::vector<cplx> out;
    analyze_column(tab, f.d, freq.lambda, freq.ell, out);
    return out[freq.ell];
}

SpectralCoefficients analyze(const RadialFunction& f, int ell_max, const LambdaGrid& grid,
                             const RadialQuadrature& quad) {
    SpectralCoefficients c(f.d, ell_max, grid);
    const Tabulated tab = tabulate(f, quad);
    const int n = static_cast<int>(grid.size());
    detail::ErrorSlot slot;
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < n; ++j) slot.run([&] {
        std::vector<cplx> col;
        analyze_column(tab, f.d, grid.nodes[j], ell_max, col);
        for (int ell = 0; ell <= ell_max; ++ell) c.at(ell, j) = col[ell];
    });
    slot.rethrow();
    return c;
}

cplx synthesize(const SpectralCoefficients& c, double rho, double s) {
    require(rho >= 0.0, ErrorCode::InvalidArgument, "rho must be nonnegative");
    const int d = c.d();
    const int alpha = d - 1;
    const auto& g = c.grid();
    cplx total = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double al = std::abs(g.nodes[j]);
        const double x = 2.0 * al * rho;
        double l0 = 1.0, l1 = d - x;
        cplx acc = c.at(0, j);
        if (c.ell_max() >= 1) acc += l1 * c.at(1, j);
        for (int ell = 1; ell < c.ell_max(); ++ell) {
            const double next = ((2.0 * ell + 1.0 + alpha - x) * l1 - (ell + alpha) * l0) / (ell + 1.0);
            l0 = l1;
            l1 = next;
            acc += l1 * c.at(ell + 1, j);
        }
        total += acc * std::polar(g.weights[j] * std::pow(al, d) * std::exp(-al * rho), s * g.nodes[j]);
    }
    return total / plancherel_constant(d);
}

cplx synthesize_evolved(const SpectralCoefficients& c, double t, double rho, double s) {
    require(rho >= 0.0, ErrorCode::InvalidArgument, "rho must be nonnegative");
    const LambdaGrid& g = c.grid();
    if (g.panel_order == 0) return synthesize(t == 0.0 ? c : evolve_schrodinger(c, t), rho, s);
    const int d = c.d(), alpha = d - 1, L = c.ell_max(), n = g.panel_order;
    double cmax = 0.0;
    for (const auto& v : c.values()) cmax = std::max(cmax, std::abs(v));
    if (cmax == 0.0) return 0.0;
    const double cut = 1e-13 * cmax;
    const auto& ref = gauss_legendre(n);

    std::vector<double> bary(n);
    for (int k = 0; k < n; ++k) {
        double p = 1.0;
        for (int j = 0; j < n; ++j)
            if (j != k) p *= ref[k].x - ref[j].x;
        bary[k] = 1.0 / p;
    }
    std::vector<cplx> ci(L + 1);
    std::vector<double> basis(n);
    cplx total = 0.0;
    for (std::size_t pidx = 0; pidx < g.panel_bounds.size(); ++pidx) {
        const std::size_t j0 = pidx * n;
        int lcut = -1;
        for (int ell = L; ell >= 0 && lcut < 0; --ell)
            for (int k = 0; k < n; ++k)
                if (std::abs(c.at(ell, j0 + k)) > cut) {
                    lcut = ell;
                    break;
                }
        if (lcut < 0) continue;
        const double a = g.panel_bounds[pidx].first, b = g.panel_bounds[pidx].second;
        const double band = 4.0 * std::abs(t) * (2.0 * lcut + d) + std::abs(s) + 2.0;
        const int m = std::max(1, static_cast<int>(std::ceil((b - a) * band / 6.0)));
        for (int sub = 0; sub < m; ++sub) {
            const double sa = a + (b - a) * sub / m, sb = a + (b - a) * (sub + 1) / m;
            for (int q = 0; q < n; ++q) {
                double lambda, weight;
                if (m == 1) {
                    lambda = g.nodes[j0 + q];
                    weight = g.weights[j0 + q];
                    for (int ell = 0; ell <= lcut; ++ell) ci[ell] = c.at(ell, j0 + q);
                } else {
                    lambda = 0.5 * (sa + sb) + 0.5 * (sb - sa) * ref[q].x;
                    weight = 0.5 * (sb - sa) * ref[q].w;
                    // barycentric interpolation in the panel's reference coordinate
                    const double u = (2.0 * lambda - a - b) / (b - a);
                    double den = 0.0;
                    int hit = -1;
                    for (int k = 0; k < n; ++k) {
                        if (u == ref[k].x) hit = k;
                        basis[k] = bary[k] / (u - ref[k].x);
                        den += basis[k];
                    }
                    if (hit >= 0) {
                        for (int k = 0; k < n; ++k) basis[k] = k == hit ? 1.0 : 0.0;
                    } else {
                        for (int k = 0; k < n; ++k) basis[k] /= den;
                    }
                    for (int ell = 0; ell <= lcut; ++ell) {
                        cplx acc = 0.0;
                        for (int k = 0; k < n; ++k) acc += basis[k] * c.at(ell, j0 + k);
                        ci[ell] = acc;
                    }
                }
                const double al = std::abs(lambda);
                const double x = 2.0 * al * rho;
                // multiplier e^{4 i t |lambda| (2 ell + d)} advanced by e^{8 i t |lambda|}
                cplx phase = std::polar(1.0, 4.0 * t * al * d);
                const cplx step = std::polar(1.0, 8.0 * t * al);
                double l0 = 1.0, l1 = d - x;
                cplx acc = ci[0] * phase;
                for (int ell = 1; ell <= lcut; ++ell) {
                    phase *= step;
                    if (ell >= 2) {
                        const double next = ((2.0 * ell - 1.0 + alpha - x) * l1 - (ell - 1.0 + alpha) * l0) / ell;
                        l0 = l1;
                        l1 = next;
                    }
                    acc += l1 * ci[ell] * phase;
                }
                total += acc * std::polar(weight * std::pow(al, d) * std::exp(-al * rho), s * lambda);
            }
        }
    }
    return total / plancherel_constant(d);
}

std::vector<cplx> synthesize_many(const SpectralCoefficients& c, const std::vector<std::pair<double, double>>& pts) {
    std::vector<cplx> out(pts.size());
    const int n = static_cast<int>(pts.size());
    detail::ErrorSlot slot;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) slot.run([&] { out[i] = synthesize(c, pts[i].first, pts[i].second); });
    slot.rethrow();
    return out;
}

double sublaplacian_symbol(const FrequencyPoint& freq, int d) {
    require(freq.lambda != 0.0, ErrorCode::InvalidArgument, "lambda must be nonzero");
    return 4.0 * std::abs(freq.lambda) * (2.0 * freq.ell + d);
}

namespace {

template <class F>
SpectralCoefficients multiply(const SpectralCoefficients& c, F factor) {
    SpectralCoefficients out = c;
    for (int ell = 0; ell <= c.ell_max(); ++ell)
        for (std::size_t j = 0; j < c.columns(); ++j) out.at(ell, j) *= factor(ell, c.grid().nodes[j]);
    return out;
}

}  // namespace

SpectralCoefficients evolve_schrodinger(const SpectralCoefficients& c, double t) {
    const int d = c.d();
    return multiply(c, [=](int ell, double lambda) {
        return std::polar(1.0, t * sublaplacian_symbol({ell, lambda}, d));
    });
}

SpectralCoefficients evolve_heat(const SpectralCoefficients& c, double t) {
    require(t > 0.0, ErrorCode::InvalidArgument, "heat evolution needs t > 0");
    const int d = c.d();
    return multiply(c, [=](int ell, double lambda) {
        return cplx(std::exp(-t * sublaplacian_symbol({ell, lambda}, d)), 0.0);
    });
}

SpectralCoefficients vertical_translate_spectral(const SpectralCoefficients& c, double s0) {
    return multiply(c, [=](int, double lambda) { return std::polar(1.0, -s0 * lambda); });
}

SpectralCoefficients project_component(const SpectralCoefficients& c, int ell) {
    require(ell >= 0 && ell <= c.ell_max(), ErrorCode::InvalidArgument, "ell out of range");
    return multiply(c, [=](int k, double) { return cplx(k == ell ? 1.0 : 0.0); });
}

SpectralCoefficients project_tail(const SpectralCoefficients& c, int ell) {
    require(ell >= 0 && ell <= c.ell_max(), ErrorCode::InvalidArgument, "ell out of range");
    return multiply(c, [=](int k, double) { return cplx(k >= ell ? 1.0 : 0.0); });
}

void write_coefficients_csv(std::ostream& os, const SpectralCoefficients& c) {
    os << "# schema=1\n";
    os << "ell,lambda,weight,re,im\n";
    os.precision(17);
    for (int ell = 0; ell <= c.ell_max(); ++ell)
        for (std::size_t j = 0; j < c.columns(); ++j)
            os << ell << ',' << c.grid().nodes[j] << ',' << c.grid().weights[j] << ',' << c.at(ell, j).real() << ','
               << c.at(ell, j).imag() << '\n';
}

SpectralCoefficients read_coefficients_csv(std::istream& is, int d) {
    struct Row {
        int ell;
        double lambda, weight, re, im;
    };
    std::vector<Row> rows;
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line.rfind("ell,lambda,weight,re,im", 0) != 0) fail(ErrorCode::IoError, "unexpected coefficient header");
            header = true;
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        Row r{};
        if (!(ss >> r.ell >> r.lambda >> r.weight >> r.re >> r.im)) fail(ErrorCode::IoError, "malformed coefficient row");
        rows.push_back(r);
    }
    if (rows.empty()) fail(ErrorCode::IoError, "no coefficient rows");
    int ell_max = 0;
    std::map<double, double> lam;
    for (const auto& r : rows) {
        ell_max = std::max(ell_max, r.ell);
        lam.emplace(r.lambda, r.weight);
    }
    LambdaGrid g;
    for (const auto& [l, w] : lam) {
        g.nodes.push_back(l);
        g.weights.push_back(w);
    }
    SpectralCoefficients c(d, ell_max, g);
    for (const auto& r : rows) {
        const auto j = static_cast<std::size_t>(std::lower_bound(g.nodes.begin(), g.nodes.end(), r.lambda) - g.nodes.begin());
        c.at(r.ell, j) = cplx(r.re, r.im);
    }
    return c;
}

}  // namespace hlab
