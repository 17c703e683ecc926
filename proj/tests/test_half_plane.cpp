#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hypergap/domain.hpp"
#include "hypergap/half_plane.hpp"

using namespace hypergap;
using Catch::Approx;

TEST_CASE("distance matches closed-form values") {
    CHECK(distance({0.0, 1.0}, {0.0, std::exp(1.0)}) == Approx(1.0).epsilon(1e-14));
    CHECK(distance({1.0, 1.0}, {1.0, 1.0}) == 0.0);
    CHECK(distance({-1.0, 1.0}, {1.0, 1.0}) == Approx(std::acosh(3.0)).epsilon(1e-14));
    CHECK(distance({-1.0, 1.0}, {1.0, 1.0}) == Approx(1.76275).epsilon(1e-5));
}

TEST_CASE("distance rejects points off the upper half-plane") {
    CHECK_THROWS_AS(distance({0.0, 0.0}, {0.0, 1.0}), std::domain_error);
    CHECK_THROWS_AS(distance({0.0, 1.0}, {0.0, -2.0}), std::domain_error);
}

TEST_CASE("distance is a metric on sampled points") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> ux(-3.0, 3.0);
    std::uniform_real_distribution<double> uy(0.05, 8.0);
    for (int trial = 0; trial < 200; ++trial) {
        const HPoint p{ux(rng), uy(rng)};
        const HPoint q{ux(rng), uy(rng)};
        const HPoint r{ux(rng), uy(rng)};
        const double pq = distance(p, q);
        CHECK(distance(q, p) == pq);  // the formula is literally symmetric
        CHECK(distance(p, p) == 0.0);
        if (pq > 0.0) CHECK((p.x != q.x || p.y != q.y));
        CHECK(distance(p, r) <= pq + distance(q, r) + 1e-12);
    }
}

TEST_CASE("acosh1p agrees with acosh and stays stable near 1") {
    for (double s : {1e-18, 1e-12, 1e-6, 0.5, 3.0, 1e6, 1e100}) {
        // reference: series for tiny s (acosh itself loses digits there), acosh otherwise
        const double ref = s < 1e-8 ? std::sqrt(2.0 * s) * (1.0 - s / 12.0)
                                    : std::acosh(1.0 + s);
        CHECK(acosh1p(s) == Approx(ref).epsilon(1e-9));
    }
    CHECK(acosh1p(1e140) == Approx(std::log(2.0) + 140.0 * std::log(10.0)).epsilon(1e-14));
    CHECK_THROWS_AS(acosh1p(-0.5), std::domain_error);
}

TEST_CASE("psi reduces to cosh(pi/c) at right angles and is symmetric") {
    for (double c : {0.3, 1.0, 2.5}) {
        CHECK(psi(kPi / 2, kPi / 2, c) == Approx(std::cosh(kPi / c)).epsilon(1e-14));
    }
    CHECK(psi(0.7, 2.1, 0.8) == Approx(psi(2.1, 0.7, 0.8)).epsilon(1e-15));
    CHECK_THROWS_AS(psi(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(psi(1.0, kPi, 1.0), std::domain_error);
}

TEST_CASE("psi gives the corner distances of the wedge") {
    const DomainParams d = DomainParams::make(0.5, 0.6, 2.0);
    CHECK(corner_distance(d.theta0, d.theta0, d.c) ==
          Approx(distance(d.P, d.Q)).epsilon(1e-12));
    CHECK(corner_distance(d.theta0, d.theta1, d.c) ==
          Approx(distance(d.P, d.R)).epsilon(1e-12));
    CHECK(std::acosh(psi(d.theta0, d.theta0, d.c)) ==
          Approx(distance(d.P, d.Q)).epsilon(1e-12));
}

TEST_CASE("outer-corner excess of psi over the same-radius chord") {
    // Psi(t0, t1) - (1 - cos t0 cos t1)/(sin t0 sin t1) = (e^T - 1)^2 / (2 e^T s0 s1)
    const double t0 = 0.68, t1 = 2.12;
    for (double c : {0.4, 1.0, 3.0}) {
        const double T = kPi / c;
        const double lhs = psi(t0, t1, c) - (1.0 - std::cos(t0) * std::cos(t1)) /
                                                (std::sin(t0) * std::sin(t1));
        const double rhs = std::pow(std::exp(T) - 1.0, 2) /
                           (2.0 * std::exp(T) * std::sin(t0) * std::sin(t1));
        CHECK(lhs == Approx(rhs).epsilon(1e-10));
        CHECK(lhs > 0.0);
    }
}

TEST_CASE("same-radius distance is radius independent") {
    const double a = 0.75, b = 2.3, c = 0.5;
    const double ref = std::acosh((1.0 - std::cos(a) * std::cos(b)) / (std::sin(a) * std::sin(b)));
    CHECK(same_radius_distance(1.0, a, b) == Approx(ref).epsilon(1e-12));
    for (double r : {0.5, 1.0, 10.0, std::exp(kPi / c)}) {
        CHECK(same_radius_distance(r, a, b) == Approx(ref).epsilon(1e-12));
        CHECK(same_radius_distance(r, a, a) == 0.0);
    }
}

TEST_CASE("corner distance survives exponent ranges where cosh overflows") {
    const double c = 0.004;  // pi/c ~ 785, cosh(pi/c) overflows a double
    const double d = corner_distance(0.7, 2.2, c);
    const double expected = kPi / c - std::log(std::sin(0.7) * std::sin(2.2));
    CHECK(std::isfinite(d));
    CHECK(d == Approx(expected).epsilon(1e-12));
}
