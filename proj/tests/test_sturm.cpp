#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "hypergap/angular.hpp"
#include "hypergap/spectrum.hpp"
#include "hypergap/sturm.hpp"

using namespace hypergap;
using Catch::Approx;

namespace {

GridFunction constant(double a, double b, double value, std::size_t n = 257) {
    GridFunction f;
    f.nodes = uniform_grid(a, b, n);
    f.values.assign(n, value);
    return f;
}

}  // namespace

TEST_CASE("zero ordering for constant coefficients") {
    const ZeroOrderingVerdict v = sturm_compare_i(constant(0, 3.3, 4.0), constant(0, 3.3, 1.0));
    REQUIRE(v.conclusive);
    CHECK(v.ordered);
    CHECK(*v.x1 == Approx(kPi / 2).margin(1e-9));
    CHECK(*v.x2 == Approx(kPi).margin(1e-9));
}

TEST_CASE("equal coefficients give equal zeros") {
    const ZeroOrderingVerdict v = sturm_compare_i(constant(0, 4.0, 2.5), constant(0, 4.0, 2.5));
    REQUIRE(v.conclusive);
    CHECK(v.ordered);
    CHECK(*v.x1 == Approx(*v.x2).margin(1e-10));
    CHECK(*v.x1 == Approx(kPi / std::sqrt(2.5)).margin(1e-9));
}

TEST_CASE("no zero in range yields an inconclusive verdict") {
    const ZeroOrderingVerdict v =
        sturm_compare_i(constant(0, 1.0, -1.0), constant(0, 1.0, -2.0));
    CHECK_FALSE(v.conclusive);
    CHECK_FALSE(v.x1.has_value());
}

TEST_CASE("ordering precondition is enforced below the relevant zero") {
    GridFunction lo = constant(0, 3.3, 1.0);
    GridFunction hi = constant(0, 3.3, 4.0);
    CHECK_THROWS_AS(sturm_compare_i(lo, hi), std::invalid_argument);
}

TEST_CASE("solution ordering: sine below identity") {
    const SolutionOrderingVerdict v =
        sturm_compare_ii(constant(0, kPi / 2, 1.0), constant(0, kPi / 2, 0.0), kPi / 2);
    CHECK(v.holds);
    CHECK(v.max_violation <= 0.0);
    CHECK(v.f1.values.back() == Approx(1.0).epsilon(1e-10));      // sin(pi/2)
    CHECK(v.f2.values.back() == Approx(kPi / 2).epsilon(1e-10));  // the line
}

TEST_CASE("solution ordering: equal coefficients coincide") {
    const SolutionOrderingVerdict v =
        sturm_compare_ii(constant(0, 1.0, 3.0), constant(0, 1.0, 3.0), 1.0);
    CHECK(v.holds);
    for (std::size_t i = 0; i < v.f1.size(); ++i)
        CHECK(v.f1.values[i] == Approx(v.f2.values[i]).margin(1e-10));
}

TEST_CASE("positivity precondition of the solution comparison") {
    // f1 = sin(2 theta)/2 dips negative before l = pi
    CHECK_THROWS_AS(sturm_compare_ii(constant(0, kPi, 4.0), constant(0, kPi, 0.5), kPi),
                    InvalidRegime);
}

TEST_CASE("lower envelope via the generic solution comparison") {
    const DomainParams d = DomainParams::make(0.2, 0.25 * kPi, 0.625 * kPi);
    const AngularProblem p = AngularProblem::make(d.c * d.c, d.theta0, d.theta1, 1537);
    const EigenPair e = solve_eigen(p, 1, Normalization::unitSlope);
    const double sigma1 = envelope_sigma1(d);

    GridFunction top = constant(d.theta0, d.theta1, sigma1, 1537);
    GridFunction mid = top;
    for (std::size_t i = 0; i < mid.size(); ++i) {
        const double s = std::sin(mid.nodes[i]);
        mid.values[i] = e.lambda / (s * s) - p.mu;
    }
    const double cut = std::min(kPi / std::sqrt(sigma1) + d.theta0, d.theta1);
    const double l = d.theta0 + 0.999 * (cut - d.theta0);  // stay inside the positivity range
    const SolutionOrderingVerdict v = sturm_compare_ii(top, mid, l);
    CHECK(v.holds);  // the sinusoid under sigma1 stays below the eigenfunction
}

TEST_CASE("shift sweep re-derives the ground sandwich") {
    const DomainParams d = DomainParams::symmetric(0.2, 0.25 * kPi);
    const auto shifts = shift_comparison_sweep(d, 0.25, 3, {1201});
    REQUIRE(shifts.size() == 3);
    CHECK(shifts.front().delta == 0.0);
    CHECK(shifts.back().delta == Approx(0.25));
    for (const ShiftComparison& sc : shifts) {
        INFO("delta=" << sc.delta);
        CHECK(sc.ordered_closed_form);
        CHECK(sc.ordered_numerically);
        CHECK(sc.bounds_consistent);
        CHECK(sc.a1 < d.theta1);
        CHECK(sc.a2 > d.theta1);
    }
    // pure-width case: the zero gap collapses to pi^2/L^2
    const auto at_zero = shift_comparison_sweep(d, 0.0, 1, {1201});
    const double base = kPi * kPi / (d.width * d.width);
    CHECK(at_zero[0].lambda > 0.5 * base);
    CHECK(at_zero[0].lambda < base);
}
