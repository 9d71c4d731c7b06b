#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/laguerre.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include "hlab/error.hpp"
#include "hlab/fourier.hpp"
#include "hlab/kernels.hpp"
#include "hlab/quadrature.hpp"

using namespace hlab;

namespace {

constexpr double kPi = std::numbers::pi;

double ratio_pow(double tau, int d) {
    return tau < 1e-8 ? 1.0 : std::pow(2.0 * tau / std::sinh(2.0 * tau), d);
}

// log(2tau / sinh 2tau) without overflow
double log_ratio(double tau) {
    if (tau < 1e-8) return 0.0;
    if (tau < 1.0) return std::log(2.0 * tau / std::sinh(2.0 * tau));
    return std::log(4.0 * tau) - 2.0 * tau - std::log1p(-std::exp(-4.0 * tau));
}

double coth_term(double tau) { return tau < 1e-8 ? 0.5 : tau / std::tanh(2.0 * tau); }

// Gaveau integral folded onto tau > 0
double heat_oracle(int d, double t, double rho, double s) {
    boost::math::quadrature::exp_sinh<double> es;
    const double v = es.integrate([&](double tau) {
        if (tau > 300.0) return 0.0;
        return ratio_pow(tau, d) * std::cos(tau * s / (2.0 * t)) * std::exp(-rho * coth_term(tau) / (2.0 * t));
    });
    return 2.0 * v / std::pow(4.0 * kPi * t, d + 1.0);
}

// (-4 i pi t)^{-Q/2} int (2tau/sinh 2tau)^d e^{-tau s/(2t) - i rho tau/(2t tanh 2tau)}, t > 0
cplx schrodinger_oracle(int d, double t, double rho, double s) {
    boost::math::quadrature::exp_sinh<double> es;
    const auto part = [&](double sign, bool imag) {
        return es.integrate([&, sign, imag](double tau) {
            if (tau > 400.0) return 0.0;
            const double amp = std::exp(d * log_ratio(tau) - sign * tau * s / (2.0 * t));
            const double ph = -rho * coth_term(tau) / (2.0 * t);
            return amp * (imag ? std::sin(ph) : std::cos(ph));
        });
    };
    const cplx integral(part(1.0, false) + part(-1.0, false), part(1.0, true) + part(-1.0, true));
    return integral * std::pow(cplx(0.0, -4.0 * kPi * t), -(d + 1.0));
}

}  // namespace

TEST_CASE("heat kernel: Gaveau integral against an independent quadrature") {
    for (int d : {1, 2})
        for (double t : {0.3, 1.0, 2.5})
            for (double rho : {0.0, 0.4, 3.0})
                for (double s : {-2.0, 0.0, 0.7}) {
                    const double ref = heat_oracle(d, t, rho, s);
                    const auto v = heat_kernel_gaveau(KernelQuery::real_time(d, t, rho, s, 1e-10));
                    CHECK(v.value.real() == doctest::Approx(ref).epsilon(1e-8));
                    CHECK(std::abs(v.value.imag()) <= 1e-12 * std::abs(ref));
                }
}

TEST_CASE("heat kernel: Laguerre series equals the Gaveau integral") {
    for (int d : {1, 2, 3})
        for (double t : {0.2, 1.0, 4.0})
            for (double rho : {0.0, 0.5, 2.0})
                for (double s : {-1.5, 0.0, 0.3}) {
                    const auto q = KernelQuery::real_time(d, t, rho, s, 1e-10);
                    const double g = heat_kernel_gaveau(q).value.real();
                    CHECK(heat_kernel_series(q).value.real() == doctest::Approx(g).epsilon(1e-7));
                }
}

TEST_CASE("heat kernel at the origin, scaling and unit mass") {
    for (double t : {0.5, 1.0, 3.0})
        CHECK(heat_kernel_gaveau(KernelQuery::real_time(1, t, 0.0, 0.0)).value.real() ==
              doctest::Approx(1.0 / (64.0 * t * t)).epsilon(1e-9));
    for (int d : {1, 2}) {
        const double t = 1.7, rho = 0.9, s = -0.6;
        const double lhs = heat_kernel_gaveau(KernelQuery::real_time(d, t, rho, s, 1e-10)).value.real();
        const double rhs = heat_kernel_gaveau(KernelQuery::real_time(d, 1.0, rho / t, s / t, 1e-10)).value.real() /
                           std::pow(t, d + 1.0);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
    // int h_1 = c_d int int rho^{d-1} h drho ds = 1
    double mass = 0.0;
    for (const auto& r : gauss_legendre(160, 0.0, 150.0))
        for (const auto& z : gauss_legendre(160, -40.0, 40.0))
            mass += r.w * z.w * heat_kernel_gaveau(KernelQuery::real_time(1, 1.0, r.x, z.x)).value.real();
    CHECK(radial_measure_constant(1) * mass == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(heat_kernel_gaveau(KernelQuery::real_time(1, 0.0, 0.0, 0.0)), Error);
    CHECK_THROWS_AS(heat_kernel_gaveau(KernelQuery::real_time(1, 1.0, -1.0, 0.0)), Error);
}

TEST_CASE("Schrodinger kernel against an independent quadrature inside the strip") {
    for (int d : {1, 2})
        for (double t : {0.5, 1.0, 3.0})
            for (double rho : {0.0, 0.3, 1.5})
                for (double frac : {-0.8, 0.0, 0.5}) {
                    const double s = frac * 4.0 * d * t;
                    const cplx ref = schrodinger_oracle(d, t, rho, s);
                    const cplx got = schrodinger_kernel(KernelQuery::real_time(d, t, rho, s, 1e-10)).value;
                    CHECK(std::abs(got - ref) <= 1e-7 * std::abs(ref));
                }
    CHECK(schrodinger_kernel(KernelQuery::real_time(1, 1.0, 0.0, 0.0)).value.real() ==
          doctest::Approx(-1.0 / 64.0).epsilon(1e-10));
}

TEST_CASE("Schrodinger kernel: dilation, time reversal and the strip") {
    for (int d : {1, 2})
        for (double t : {0.25, 2.0, -3.0}) {
            const double rho = 0.7, s1 = 0.4 * 4.0 * d;
            const cplx unit = schrodinger_kernel(KernelQuery::real_time(d, 1.0, rho, s1, 1e-10)).value;
            const cplx expect = (t > 0 ? unit : std::conj(unit)) / std::pow(std::abs(t), d + 1.0);
            const cplx got =
                schrodinger_kernel(KernelQuery::real_time(d, t, rho * std::abs(t), s1 * std::abs(t), 1e-10)).value;
            CHECK(std::abs(got - expect) <= 1e-8 * std::abs(expect));
        }
    try {
        schrodinger_kernel(KernelQuery::real_time(1, 1.0, 0.0, 4.0));
        FAIL("expected strip violation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::StripViolation);
    }
    try {
        schrodinger_kernel(KernelQuery::real_time(1, 0.0, 0.0, 0.0));
        FAIL("expected zero time");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroTime);
    }
}

TEST_CASE("complex time kernel joins heat and Schrodinger") {
    for (double rho : {0.0, 0.8})
        for (double s : {-0.5, 1.2}) {
            const double h = heat_kernel_gaveau(KernelQuery::real_time(1, 1.3, rho, s, 1e-10)).value.real();
            const cplx hz = kernel_complex_time(KernelQuery::complex_time(1, cplx(1.3, 0.0), rho, s, 1e-10)).value;
            CHECK(hz.real() == doctest::Approx(h).epsilon(1e-9));
        }
    const double t = 1.0, rho = 0.5, s = 1.0;
    const cplx S = schrodinger_kernel(KernelQuery::real_time(1, t, rho, s, 1e-10)).value;
    double prev = 1e300;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const cplx H = kernel_complex_time(KernelQuery::complex_time(1, cplx(eps, -t), rho, s, 1e-10)).value;
        const double gap = std::abs(H - S);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-3 * std::abs(S));
    CHECK_THROWS_AS(kernel_complex_time(KernelQuery::complex_time(1, cplx(-0.1, 1.0), 0.0, 0.0)), Error);
}

TEST_CASE("Phi functions: both routes and the generating function") {
    for (int d : {1, 2, 3})
        for (double r : {0.0, 0.3, 0.85})
            for (double x : {0.0, 0.7, 4.0}) {
                // e^{-x/2} (1-r)^{-d} e^{-x r/(1-r)}
                const double closed = std::exp(-0.5 * x) * std::pow(1.0 - r, -d) * std::exp(-x * r / (1.0 - r));
                CHECK(phi_direct(0, cplx(x, 0.0), r, d).real() == doctest::Approx(closed).epsilon(1e-10));
                double head = 0.0;
                for (int k = 0; k < 3; ++k) head += std::pow(r, k) * boost::math::laguerre(k, d - 1, x);
                for (int ell : {1, 3, 10}) {
                    const cplx a = phi_direct(ell, cplx(x, 0.3), r, d);
                    const cplx b = phi_remainder(ell, cplx(x, 0.3), r, d);
                    CHECK(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a)));
                }
                CHECK(phi_remainder(3, cplx(x, 0.0), r, d).real() ==
                      doctest::Approx(closed - std::exp(-0.5 * x) * head).epsilon(1e-9).scale(1e-12));
            }
    CHECK_THROWS_AS(phi_direct(0, cplx(1.0, 0.0), 1.0, 1), Error);
}

TEST_CASE("restricted kernel") {
    for (double rho : {0.0, 0.6})
        for (double s : {-2.5, 0.0, 3.0}) {
            const auto q = KernelQuery::real_time(1, 1.0, rho, s, 1e-10);
            const cplx S = schrodinger_kernel(q).value;
            CHECK(std::abs(restricted_kernel(0, q).value - S) <= 1e-8 * std::abs(S));
        }
    // finite beyond 4d|t| once ell > 0
    for (int ell : {1, 2})
        for (double frac : {0.1, 0.5, 0.9}) {
            const double s = 4.0 + frac * 8.0 * ell;
            const cplx v = restricted_kernel(ell, KernelQuery::real_time(1, 1.0, 0.2, s, 1e-8)).value;
            CHECK(std::isfinite(v.real()));
            CHECK(std::isfinite(v.imag()));
        }
    try {
        restricted_kernel(1, KernelQuery::real_time(1, 1.0, 0.0, 12.0));
        FAIL("expected strip violation");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::StripViolation);
    }
    CHECK_THROWS_AS(restricted_kernel(-1, KernelQuery::real_time(1, 1.0, 0.0, 0.0)), Error);
}

TEST_CASE("dispersion constant and strip time") {
    // d = 1: M_kappa = psi_1((1 - kappa^2/4)/2) / (32 pi^2)
    for (double kappa : {0.0, 0.5, 1.0, 1.5, 1.9}) {
        const double ref = boost::math::trigamma(0.5 * (1.0 - 0.25 * kappa * kappa)) / (32.0 * kPi * kPi);
        CHECK(dispersion_constant(kappa, 1) == doctest::Approx(ref).epsilon(1e-9));
    }
    CHECK(dispersion_constant(1.0, 1) == doctest::Approx(0.0258425).epsilon(1e-6));
    double prev = 0.0;
    for (double kappa : {0.0, 1.0, 2.0, 2.5, 2.8}) {
        const double m = dispersion_constant(kappa, 2);
        CHECK(m > prev);
        prev = m;
    }
    const auto both = dispersion_constants(1.0, 1);
    CHECK(both.signed_value <= both.value);
    CHECK_THROWS_AS(dispersion_constant(2.0, 1), Error);
    CHECK_THROWS_AS(dispersion_constant(-0.1, 1), Error);
    CHECK(strip_time(1.0, 1.0, 1) == doctest::Approx(1.0));
    CHECK(strip_time(0.0, 2.0, 2) == doctest::Approx(4.0 / 8.0));
    CHECK_THROWS_AS(strip_time(2.0, 1.0, 1), Error);
    CHECK_THROWS_AS(strip_time(1.0, 0.0, 1), Error);
}
