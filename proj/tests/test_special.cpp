#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/hermite.hpp>
#include <boost/math/special_functions/laguerre.hpp>

#include "hlab/error.hpp"
#include "hlab/special.hpp"

using namespace hlab;

namespace {

constexpr double kPi = std::numbers::pi;

// physicists' H_m normalized in L^2(R) with the Gaussian weight folded in
double boost_hermite_fn(int m, double x) {
    const double norm = std::sqrt(std::ldexp(boost::math::factorial<double>(m), m) * std::sqrt(kPi));
    return boost::math::hermite(m, x) * std::exp(-0.5 * x * x) / norm;
}

// sum_m r^m h_m(a) h_m(b), classical closed form
double mehler_kernel(double a, double b, double r) {
    const double q = 1.0 - r * r;
    return std::exp(-((1.0 + r * r) * (a * a + b * b) - 4.0 * r * a * b) / (2.0 * q)) / std::sqrt(kPi * q);
}

}  // namespace

TEST_CASE("hermite functions against boost") {
    for (int m : {0, 1, 2, 5, 10, 30, 60}) {
        for (double x : {-4.0, -1.3, 0.0, 0.7, 2.5, 6.0}) {
            const double ref = boost_hermite_fn(m, x);
            CHECK(hermite_fn(m, x) == doctest::Approx(ref).epsilon(1e-11).scale(1e-14));
        }
    }
    CHECK(hermite_fn_scaled(3, -4.0, 0.5) == doctest::Approx(std::sqrt(2.0) * boost_hermite_fn(3, 1.0)));
    CHECK_THROWS_AS(hermite_fn_scaled(3, 0.0, 0.5), Error);
    CHECK_THROWS_AS(hermite_fn(-1, 0.5), Error);
}

TEST_CASE("hermite functions are orthonormal") {
    // Gauss-Hermite-free check: trapezoid on a wide grid is spectrally accurate here
    const double h = 0.01;
    for (int m : {0, 3, 8}) {
        for (int n : {0, 3, 8}) {
            double acc = 0.0;
            for (double x = -12.0; x <= 12.0; x += h) acc += hermite_fn(m, x) * hermite_fn(n, x) * h;
            CHECK(acc == doctest::Approx(m == n ? 1.0 : 0.0).scale(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("large order hermite stays finite and bounded") {
    for (double x : {0.0, 5.0, 20.0, 40.0}) {
        const double v = hermite_fn(1500, x);
        CHECK(std::isfinite(v));
        CHECK(std::abs(v) <= std::pow(kPi, -0.25) + 1e-12);
    }
}

TEST_CASE("normalized hermite polynomials") {
    for (int m : {0, 1, 4, 9})
        for (double x : {-2.0, 0.3, 1.7}) {
            const double ref = boost::math::hermite(m, x) / std::sqrt(std::ldexp(boost::math::factorial<double>(m), m));
            CHECK(hermite_poly_normalized(m, x) == doctest::Approx(ref).epsilon(1e-12));
        }
}

TEST_CASE("laguerre against boost") {
    for (int alpha : {0, 1, 2})
        for (int ell : {0, 1, 2, 7, 25, 100})
            for (double x : {0.0, 0.3, 2.0, 11.0, 40.0}) {
                const double ref = boost::math::laguerre(ell, alpha, x);
                CHECK(laguerre(ell, alpha, x) == doctest::Approx(ref).epsilon(1e-10).scale(1e-12));
                const LogValue lv = laguerre_log(ell, alpha, x);
                CHECK(lv.value() == doctest::Approx(ref).epsilon(1e-10).scale(1e-12));
            }
    std::vector<double> all(12);
    laguerre_all(1, 3.3, all);
    for (int k = 0; k < 12; ++k) CHECK(all[k] == doctest::Approx(boost::math::laguerre(k, 1, 3.3)).epsilon(1e-12));
}

TEST_CASE("laguerre at high order uses the log form without overflow") {
    const LogValue v = laguerre_log(5000, 0, 3000.0);
    CHECK(std::isfinite(v.log_abs));
    CHECK(std::abs(v.sign) == 1);
    CHECK(std::isfinite(laguerre(400, 1, 2.0)));
    CHECK(laguerre(400, 1, 2.0) == doctest::Approx(boost::math::laguerre(400, 1, 2.0)).epsilon(1e-8));
}

TEST_CASE("complex laguerre reduces to real on the axis") {
    for (int ell : {0, 3, 12}) {
        const auto z = laguerre(ell, 1, std::complex<double>(2.5, 0.0));
        CHECK(z.real() == doctest::Approx(laguerre(ell, 1, 2.5)).epsilon(1e-13));
        CHECK(z.imag() == 0.0);
    }
}

TEST_CASE("laguerre generating function") {
    for (int alpha : {0, 1, 2})
        for (double r : {-0.6, 0.2, 0.7})
            for (double x : {0.0, 1.5, 6.0}) {
                double sum = 0.0, rk = 1.0;
                for (int k = 0; k < 400; ++k) {
                    sum += rk * boost::math::laguerre(k, alpha, x);
                    rk *= r;
                }
                CHECK(laguerre_generating_closed(r, x, alpha) == doctest::Approx(sum).epsilon(1e-10));
            }
    CHECK_THROWS_AS(laguerre_generating_closed(1.0, 0.5, 0), Error);
}

TEST_CASE("Mehler series against boost hermite oracle") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(-3.0, 3.0), ur(-0.6, 0.6);
    for (int k = 0; k < 20; ++k) {
        const double x = ux(rng), xt = ux(rng), r = ur(rng);
        double oracle = 0.0;
        for (int m = 0; m < 90; ++m)
            oracle += boost::math::hermite(m, x) * boost::math::hermite(m, xt) * std::pow(0.5 * r, m) /
                      boost::math::factorial<double>(m);
        const double closed = mehler_closed(x, xt, r);
        const SeriesResult s = mehler_sum(x, xt, r);
        CHECK(closed == doctest::Approx(oracle).epsilon(1e-10));
        CHECK(std::abs(s.value - closed) <= 1e-8 * std::max(1.0, std::abs(closed)));
        CHECK(s.tail_bound < 1e-12);
    }
}

TEST_CASE("Mehler series reports exhaustion with its best estimate") {
    TruncationBudget tight;
    tight.max_terms = 10;
    try {
        mehler_sum(1.0, 0.5, 0.95, tight);
        FAIL("expected exhaustion");
    } catch (const ConvergenceError& e) {
        CHECK(e.code() == ErrorCode::BudgetExhausted);
        CHECK(e.error_estimate() > 1e-12);
        CHECK(std::isfinite(e.best_re()));
    }
    CHECK_THROWS_AS(mehler_closed(0.0, 0.0, 1.0), Error);
    TruncationBudget bad;
    bad.max_terms = 0;
    CHECK_THROWS_AS(mehler_sum(0.0, 0.0, 0.1, bad), Error);
}

TEST_CASE("heat Mehler sum matches the closed form for t lambda >= 0.1") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ul(0.5, 4.0), utl(0.1, 2.0), uy(-2.0, 2.0);
    for (int k = 0; k < 20; ++k) {
        const double lambda = ul(rng), t = utl(rng) / lambda, y = uy(rng), z = uy(rng);
        const double sl = std::sqrt(lambda);
        const double r = std::exp(-2.0 * t * lambda);
        const double oracle = sl * mehler_kernel(sl * (z - y), sl * (z + y), r);
        CHECK(mehler_heat_closed(lambda, t, y, z) == doctest::Approx(oracle).epsilon(1e-12));
        const SeriesResult s = mehler_heat_sum(lambda, t, y, z);
        CHECK(std::abs(s.value - oracle) <= 1e-8 * std::max(1.0, oracle));
    }
}

TEST_CASE("hyperbolic helpers near zero and far out") {
    CHECK(tau_over_tanh2(0.0) == doctest::Approx(0.5));
    for (double tau : {1e-8, 1e-4, 9e-4, 1.1e-3, 0.3, 2.0, 30.0}) {
        const double ref = tau / std::tanh(2.0 * tau);
        CHECK(tau_over_tanh2(tau) == doctest::Approx(ref).epsilon(1e-13));
        CHECK(tau_over_tanh2(-tau) == doctest::Approx(ref).epsilon(1e-13));
        const double x = 2.0 * tau;
        // naive log cancels for small x; use the Taylor series there
        const double lsr = tau < 1e-2 ? -x * x / 6.0 + std::pow(x, 4) / 180.0 - std::pow(x, 6) / 2835.0
                                      : std::log(x / std::sinh(x));
        CHECK(log_sinh_ratio(tau) == doctest::Approx(lsr).epsilon(1e-12).scale(1e-15));
        CHECK(sinh_ratio_pow(tau, 2) == doctest::Approx(std::exp(2.0 * lsr)).epsilon(1e-12));
    }
    CHECK(log_sinh_ratio(0.0) == 0.0);
    CHECK(std::isfinite(log_sinh_ratio(2000.0)));
    CHECK(log_sinh_ratio(2000.0) == doctest::Approx(std::log(4000.0) - 4000.0 + std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("binomial") {
    for (int n : {0, 3, 10, 40})
        for (int k = 0; k <= n; k += 3)
            CHECK(binomial(n, k) == doctest::Approx(boost::math::binomial_coefficient<double>(n, k)).epsilon(1e-13));
}
