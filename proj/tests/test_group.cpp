#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "hlab/error.hpp"
#include "hlab/group.hpp"
#include "hlab/quadrature.hpp"

using namespace hlab;

namespace {

GroupPoint random_point(std::mt19937_64& rng, int d, double scale = 2.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> y(d), eta(d);
    for (auto& v : y) v = u(rng);
    for (auto& v : eta) v = u(rng);
    return {y, eta, u(rng)};
}

double max_diff(const GroupPoint& a, const GroupPoint& b) {
    double m = std::abs(a.s() - b.s());
    for (int j = 0; j < a.dim(); ++j) {
        m = std::max(m, std::abs(a.y()[j] - b.y()[j]));
        m = std::max(m, std::abs(a.eta()[j] - b.eta()[j]));
    }
    return m;
}

}  // namespace

TEST_CASE("product matches the twisted law by hand") {
    const auto w = GroupPoint::make1(1.0, 2.0, 3.0);
    const auto v = GroupPoint::make1(-0.5, 4.0, 1.0);
    const auto p = product(w, v);
    CHECK(p.y()[0] == doctest::Approx(0.5));
    CHECK(p.eta()[0] == doctest::Approx(6.0));
    // 3 + 1 + 2 (2)(-0.5) - 2 (4)(1)
    CHECK(p.s() == doctest::Approx(-6.0));
    CHECK(homogeneous_dimension(1) == 4);
    CHECK(homogeneous_dimension(3) == 8);
}

TEST_CASE("group axioms on random points") {
    std::mt19937_64 rng(7);
    for (int d : {1, 2, 3}) {
        const auto e = GroupPoint::identity(d);
        for (int k = 0; k < 1000; ++k) {
            const auto a = random_point(rng, d), b = random_point(rng, d), c = random_point(rng, d);
            CHECK(max_diff(product(product(a, b), c), product(a, product(b, c))) < 1e-12);
            CHECK(max_diff(product(a, inverse(a)), e) < 1e-14);
            CHECK(max_diff(product(inverse(a), a), e) < 1e-14);
            CHECK(max_diff(product(e, a), a) == 0.0);
        }
    }
}

TEST_CASE("dilations are automorphisms and scale the gauge") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ua(0.1, 5.0);
    for (int k = 0; k < 1000; ++k) {
        const int d = 1 + k % 3;
        const auto a = random_point(rng, d), b = random_point(rng, d);
        const double r = ua(rng);
        CHECK(max_diff(dilate(r, product(a, b)), product(dilate(r, a), dilate(r, b))) < 1e-11 * r * r);
        CHECK(koranyi_norm(dilate(r, a)) == doctest::Approx(r * koranyi_norm(a)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(dilate(0.0, GroupPoint::identity(1)), Error);
    CHECK_THROWS_AS(dilate(-1.0, GroupPoint::identity(1)), Error);
}

TEST_CASE("distance is left invariant and satisfies the triangle inequality") {
    std::mt19937_64 rng(13);
    for (int k = 0; k < 1000; ++k) {
        const int d = 1 + k % 3;
        const auto a = random_point(rng, d), b = random_point(rng, d), c = random_point(rng, d);
        const double dab = distance(a, b);
        CHECK(distance(left_translate(c, a), left_translate(c, b)) == doctest::Approx(dab).epsilon(1e-12));
        CHECK(distance(b, a) == doctest::Approx(dab).epsilon(1e-12));
        CHECK(dab <= distance(a, c) + distance(c, b) + 1e-12);
        CHECK(koranyi_norm(product(a, b)) <= koranyi_norm(a) + koranyi_norm(b) + 1e-12);
    }
}

TEST_CASE("gauge formula and ball membership") {
    const auto w = GroupPoint::make1(1.0, 1.0, 2.0);
    CHECK(w.rho() == 2.0);
    CHECK(koranyi_norm(w) == doctest::Approx(std::pow(8.0, 0.25)));
    CHECK(koranyi_gauge(2.0, 2.0) == doctest::Approx(std::pow(8.0, 0.25)));
    CHECK(in_ball(w, GroupPoint::identity(1), 1.7));
    CHECK_FALSE(in_ball(w, GroupPoint::identity(1), 1.6));
    CHECK_THROWS_AS(in_ball(w, GroupPoint::identity(1), -1.0), Error);
    CHECK_THROWS_AS(product(GroupPoint::identity(1), GroupPoint::identity(2)), Error);
}

TEST_CASE("ball volume scales like R^Q") {
    const auto one = [](double, double) { return cplx(1.0, 0.0); };
    for (int d : {1, 2}) {
        const double Q = 2.0 * d + 2.0;
        const double v1 = std::pow(lp_norm_on_ball_radial(one, 1.0, 1.0, d, 48, 48), 1.0);
        for (double R : {0.5, 2.0, 3.0}) {
            const double vR = lp_norm_on_ball_radial(one, 1.0, R, d, 48, 48);
            CHECK(vR / v1 == doctest::Approx(std::pow(R, Q)).epsilon(1e-10));
        }
    }
    // d = 1: |B(0, R)| = pi^2 R^4 / 2
    const double v = lp_norm_on_ball_radial(one, 1.0, 1.0, 1, 64, 64);
    CHECK(v == doctest::Approx(0.5 * std::numbers::pi * std::numbers::pi).epsilon(1e-6));
}

TEST_CASE("Monte Carlo ball volume at d = 1") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double R = 1.3;
    long hits = 0;
    const long n = 400000;
    const auto c = GroupPoint::make1(0.4, -0.2, 0.3);
    for (long k = 0; k < n; ++k) {
        // box [-R, R]^2 x [-R^2, R^2] around the center, then translate
        const auto w = left_translate(c, GroupPoint::make1(R * u(rng), R * u(rng), R * R * u(rng)));
        hits += in_ball(w, c, R);
    }
    const double box = 4.0 * R * R * 2.0 * R * R;
    const double vol = box * hits / n;
    CHECK(vol == doctest::Approx(0.5 * std::numbers::pi * std::numbers::pi * std::pow(R, 4)).epsilon(0.01));
}
