#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hypergap/errors.hpp"
#include "hypergap/grid_function.hpp"
#include "hypergap/ivp.hpp"

namespace hypergap {

namespace detail {

// Piecewise-linear read of a sampled coefficient.  Linear interpolation
// preserves pointwise ordering of two coefficients that are ordered at the
// shared nodes, so comparison verdicts transfer to the interpolants exactly.
struct LinearInterp {
    const GridFunction* f;
    double operator()(double x) const {
        const auto& n = f->nodes;
        if (x <= n.front()) return f->values.front();
        if (x >= n.back()) return f->values.back();
        const auto it = std::upper_bound(n.begin(), n.end(), x);
        const std::size_t j = static_cast<std::size_t>(it - n.begin());
        const double t = (x - n[j - 1]) / (n[j] - n[j - 1]);
        return f->values[j - 1] + t * (f->values[j] - f->values[j - 1]);
    }
};

inline void require_shared_ordered(const GridFunction& b1, const GridFunction& b2,
                                   double up_to) {
    if (b1.nodes.size() != b2.nodes.size() || b1.nodes != b2.nodes)
        throw std::invalid_argument("sturm_compare: coefficients need a shared grid");
    for (std::size_t i = 0; i < b1.size(); ++i) {
        if (b1.nodes[i] > up_to) break;
        const double slack =
            1e-12 * std::max({std::abs(b1.values[i]), std::abs(b2.values[i]), 1.0});
        if (b1.values[i] < b2.values[i] - slack)
            throw std::invalid_argument("sturm_compare: need b1 >= b2 pointwise");
    }
}

}  // namespace detail

// First zeros x_i of f_i'' + b_i f_i = 0, f_i(a) = 0, f_i'(a) = 1, and the
// ordering x1 <= x2 expected whenever b1 >= b2.
struct ZeroOrderingVerdict {
    std::optional<double> x1;
    std::optional<double> x2;
    bool conclusive = false;  // both zeros found inside the grid range
    bool ordered = false;     // x1 <= x2 (up to integrator slack)
};

inline ZeroOrderingVerdict sturm_compare_i(const GridFunction& b1, const GridFunction& b2) {
    const double a = b1.nodes.front();
    const double end = b1.nodes.back();
    ZeroOrderingVerdict v;
    v.x1 = first_zero_after(detail::LinearInterp{&b1}, a, end);
    v.x2 = first_zero_after(detail::LinearInterp{&b2}, a, end);
    // the ordering hypothesis is only needed up to the first zero of the
    // slower oscillator
    detail::require_shared_ordered(b1, b2, v.x2 ? *v.x2 : end);
    if (v.x1 && v.x2) {
        v.conclusive = true;
        v.ordered = *v.x1 <= *v.x2 + 1e-12 * (end - a);
    } else if (v.x1 && !v.x2) {
        // the slower oscillator never returned to zero: ordering holds vacuously
        v.conclusive = true;
        v.ordered = true;
    }
    return v;
}

// Solution-wise comparison: with b1 >= b2 and f1 > 0 on (a, l), the matched
// initial-slope solutions satisfy f1 <= f2 there.
struct SolutionOrderingVerdict {
    bool holds = false;
    double max_violation = 0.0;  // max over the grid of f1 - f2, clipped at 0
    double violation_at = 0.0;
    GridFunction f1;
    GridFunction f2;
};

inline SolutionOrderingVerdict sturm_compare_ii(const GridFunction& b1, const GridFunction& b2,
                                                double l, double rel_tol = 1e-9) {
    detail::require_shared_ordered(b1, b2, l);
    const double a = b1.nodes.front();
    if (!(l > a && l <= b1.nodes.back() + 1e-12))
        throw std::invalid_argument("sturm_compare_ii: l outside the coefficient grid");

    std::vector<double> grid;
    for (double x : b1.nodes)
        if (x < l) grid.push_back(x);
    grid.push_back(l);

    SolutionOrderingVerdict v;
    v.f1 = integrate_second_order(detail::LinearInterp{&b1}, grid, 0.0, 1.0).h;
    v.f2 = integrate_second_order(detail::LinearInterp{&b2}, grid, 0.0, 1.0).h;

    const double m1 = max_abs(v.f1);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        if (v.f1.values[i] <= -1e-12 * m1)
            throw InvalidRegime("sturm_compare_ii: f1 is not positive on (a, l)");

    const double tol = rel_tol * std::max(m1, max_abs(v.f2));
    v.holds = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double excess = v.f1.values[i] - v.f2.values[i];
        if (excess > v.max_violation) {
            v.max_violation = excess;
            v.violation_at = grid[i];
        }
    }
    if (v.max_violation > tol) v.holds = false;
    return v;
}

}  // namespace hypergap
