#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "hypergap/errors.hpp"
#include "hypergap/grid_function.hpp"
#include "hypergap/half_plane.hpp"
#include "hypergap/ivp.hpp"

namespace hypergap {

// Generalized problem h'' + lambda csc^2(theta) h = mu h on [theta0, theta1],
// Dirichlet at both ends.  The weight csc^2 is smooth on the closed interval
// because 0 < theta0 < theta1 < pi.
struct AngularProblem {
    double mu = 0.0;
    double theta0 = 0.0;
    double theta1 = 0.0;
    std::size_t grid_size = 2001;

    static AngularProblem make(double mu, double theta0, double theta1,
                               std::size_t grid_size = 2001) {
        if (!(mu >= 0.0)) throw std::domain_error("AngularProblem: mu must be >= 0");
        if (!(theta0 > 0.0 && theta0 < theta1 && theta1 < kPi))
            throw std::domain_error("AngularProblem: need 0 < theta0 < theta1 < pi");
        if (theta1 - theta0 < 1e-4)
            throw std::domain_error("AngularProblem: interval narrower than 1e-4 rejected");
        if (grid_size < 64) throw std::domain_error("AngularProblem: grid_size too small");
        return {mu, theta0, theta1, grid_size};
    }

    double width() const { return theta1 - theta0; }
    double theta_star() const { return std::min(theta0, kPi - theta1); }

    // coefficient of h in h'' + (lambda csc^2 - mu) h = 0
    auto coefficient(double lambda) const {
        const double m = mu;
        return [lambda, m](double theta) {
            const double s = std::sin(theta);
            return lambda / (s * s) - m;
        };
    }
};

enum class Normalization { unitSlope, unitL2 };

struct EigenPair {
    double lambda = 0.0;
    int k = 1;
    GridFunction h;
    Normalization normalization = Normalization::unitL2;
    double endpoint_residual = 0.0;  // |h(theta1)| / max|h| before normalization
};

// Sandwich sin^2(theta*) (mu + k^2 pi^2 / L^2) <= lambda_k <= mu + k^2 pi^2 / L^2.
// The weight obeys 1 <= csc^2 theta <= csc^2 theta* on the interval, so the
// Rayleigh-quotient argument covers every index k >= 1.
struct EigenBounds {
    double lower = 0.0;
    double upper = 0.0;
};

inline EigenBounds eigen_bounds(const AngularProblem& p, int k) {
    if (k < 1) throw std::domain_error("eigen_bounds: k must be >= 1");
    const double L = p.width();
    const double base = p.mu + static_cast<double>(k) * static_cast<double>(k) * kPi * kPi / (L * L);
    const double s = std::sin(p.theta_star());
    return {s * s * base, base};
}

// Shoot h'' + (lambda csc^2 - mu) h = 0 with h(theta0) = 0, h'(theta0) = 1.
inline IvpSolution solve_ivp_full(const AngularProblem& p, double lambda, IvpOptions opt = {}) {
    const auto grid = uniform_grid(p.theta0, p.theta1, p.grid_size);
    return integrate_second_order(p.coefficient(lambda), grid, 0.0, 1.0, opt);
}

inline GridFunction solve_ivp(const AngularProblem& p, double lambda, IvpOptions opt = {}) {
    return solve_ivp_full(p, lambda, opt).h;
}

namespace detail {

struct Shot {
    double lambda = 0.0;
    double endpoint = 0.0;  // h(theta1)
    int interior_nodes = 0;
    IvpSolution sol;

    // True once lambda has crossed the k-th eigenvalue.  The endpoint sign is
    // consulted as well: just past the crossing the new zero still sits inside
    // the node-count tolerance band at theta1, where the count lags behind.
    bool past(int k) const {
        if (interior_nodes >= k) return true;
        if (interior_nodes != k - 1) return false;
        const double expected_before = (k % 2 == 1) ? 1.0 : -1.0;  // sign (-1)^(k-1)
        return endpoint * expected_before < 0.0;
    }
};

inline Shot shoot(const AngularProblem& p, double lambda) {
    Shot s;
    s.lambda = lambda;
    s.sol = solve_ivp_full(p, lambda);
    s.endpoint = s.sol.h.values.back();
    s.interior_nodes = node_count(s.sol.h);
    return s;
}

}  // namespace detail

// k-th eigenvalue by shooting: bisection on the crossing predicate pins the
// index, then Illinois iteration on the endpoint value polishes lambda.  The
// bracket comes from eigen_bounds; a genuine bracket failure means those
// bounds are violated, which is an invariant breach, not a solver hiccup.
inline EigenPair solve_eigen(const AngularProblem& p, int k,
                             Normalization norm = Normalization::unitL2) {
    if (k < 1) throw std::domain_error("solve_eigen: k must be >= 1");
    const EigenBounds bounds = eigen_bounds(p, k);

    detail::Shot shot_lo = detail::shoot(p, bounds.lower * (1.0 - 1e-9));
    if (shot_lo.past(k))
        throw InvariantViolation("solve_eigen: eigenvalue k=" + std::to_string(k) +
                                 " found below its closed-form lower bound");
    detail::Shot shot_hi = detail::shoot(p, bounds.upper * (1.0 + 1e-9));
    for (double inflate : {1e-7, 1e-5}) {  // guard against near-tight upper bound
        if (shot_hi.past(k)) break;
        shot_hi = detail::shoot(p, bounds.upper * (1.0 + inflate));
    }
    if (!shot_hi.past(k))
        throw InvariantViolation("solve_eigen: eigenvalue k=" + std::to_string(k) +
                                 " not reached at its closed-form upper bound");

    // Bisection until the endpoint values bracket the zero crossing.
    for (int iter = 0; iter < 200; ++iter) {
        if (shot_lo.interior_nodes == k - 1 && shot_hi.endpoint * shot_lo.endpoint < 0.0 &&
            (shot_hi.lambda - shot_lo.lambda) < 0.25 * shot_hi.lambda)
            break;
        if ((shot_hi.lambda - shot_lo.lambda) <= 1e-13 * shot_hi.lambda) break;
        detail::Shot mid = detail::shoot(p, 0.5 * (shot_lo.lambda + shot_hi.lambda));
        (mid.past(k) ? shot_hi : shot_lo) = std::move(mid);
    }

    // Illinois iteration on g(lambda) = h(theta1; lambda) within the bracket.
    detail::Shot best = shot_hi.endpoint * shot_hi.endpoint < shot_lo.endpoint * shot_lo.endpoint
                            ? shot_hi
                            : shot_lo;
    {
        double a = shot_lo.lambda, fa = shot_lo.endpoint;
        double b = shot_hi.lambda, fb = shot_hi.endpoint;
        int side = 0;
        for (int iter = 0; iter < 80 && fa * fb < 0.0; ++iter) {
            double cand = (fa * b - fb * a) / (fa - fb);
            if (!(cand > std::min(a, b) && cand < std::max(a, b))) cand = 0.5 * (a + b);
            detail::Shot sc = detail::shoot(p, cand);
            const double fc = sc.endpoint;
            if (std::abs(fc) < std::abs(best.endpoint)) best = sc;
            if (fc * fb > 0.0) {
                b = cand;
                fb = fc;
                if (side == -1) fa *= 0.5;  // Illinois halving against stagnation
                side = -1;
            } else if (fc * fa > 0.0) {
                a = cand;
                fa = fc;
                if (side == 1) fb *= 0.5;
                side = 1;
            } else {
                break;  // landed on an exact zero
            }
            const double m = max_abs(sc.sol.h);
            if (std::abs(fc) <= 1e-13 * m || std::abs(b - a) <= 1e-15 * std::abs(b)) break;
        }
    }

    const double lambda = best.lambda;
    const double m = max_abs(best.sol.h);
    const double residual = std::abs(best.sol.h.values.back()) / m;
    if (residual > 1e-8)
        throw SolverError("solve_eigen: endpoint residual " + std::to_string(residual) +
                          " exceeds 1e-8 at lambda=" + std::to_string(lambda));
    if (best.interior_nodes != k - 1)
        throw SolverError("solve_eigen: converged solution has " +
                          std::to_string(best.interior_nodes) + " interior nodes, expected " +
                          std::to_string(k - 1));

    EigenPair pair;
    pair.lambda = lambda;
    pair.k = k;
    pair.h = std::move(best.sol.h);
    pair.h.values.back() = 0.0;  // pin the boundary zero
    pair.endpoint_residual = residual;
    pair.normalization = norm;
    if (norm == Normalization::unitL2) {
        std::vector<double> sq(pair.h.values.size());
        for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = pair.h.values[i] * pair.h.values[i];
        const double dx = p.width() / static_cast<double>(p.grid_size - 1);
        const double nrm = std::sqrt(trapezoid(sq, dx));
        for (double& v : pair.h.values) v /= nrm;
    }
    return pair;
}

}  // namespace hypergap
