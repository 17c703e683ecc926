#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hypergap/errors.hpp"
#include "hypergap/grid_function.hpp"

namespace hypergap {

struct IvpOptions {
    double rtol = 1e-12;
    double atol = 1e-14;
};

struct IvpSolution {
    GridFunction h;             // solution samples at the requested nodes
    std::vector<double> slope;  // h' at the same nodes
    long accepted_steps = 0;
};

namespace detail {

// One Dormand-Prince 5(4) step for y'' + q(x) y = 0, state (y, s = y').
// k1 must hold (s, -q(x) y) on entry (FSAL); on acceptance it is replaced by
// the derivative at the step end.  Returns the scaled error estimate.
template <class Q>
double dp45_step(Q& q, double x, double dx, double& y, double& s, double k1[2],
                 double out[2]) {
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    auto f = [&q](double xx, double yy, double ss, double k[2]) {
        k[0] = ss;
        k[1] = -q(xx) * yy;
    };

    double k2[2], k3[2], k4[2], k5[2], k6[2], k7[2];
    double ty, ts;

    ty = y + dx * a21 * k1[0];
    ts = s + dx * a21 * k1[1];
    f(x + dx / 5.0, ty, ts, k2);
    ty = y + dx * (a31 * k1[0] + a32 * k2[0]);
    ts = s + dx * (a31 * k1[1] + a32 * k2[1]);
    f(x + 3.0 * dx / 10.0, ty, ts, k3);
    ty = y + dx * (a41 * k1[0] + a42 * k2[0] + a43 * k3[0]);
    ts = s + dx * (a41 * k1[1] + a42 * k2[1] + a43 * k3[1]);
    f(x + 4.0 * dx / 5.0, ty, ts, k4);
    ty = y + dx * (a51 * k1[0] + a52 * k2[0] + a53 * k3[0] + a54 * k4[0]);
    ts = s + dx * (a51 * k1[1] + a52 * k2[1] + a53 * k3[1] + a54 * k4[1]);
    f(x + 8.0 * dx / 9.0, ty, ts, k5);
    ty = y + dx * (a61 * k1[0] + a62 * k2[0] + a63 * k3[0] + a64 * k4[0] + a65 * k5[0]);
    ts = s + dx * (a61 * k1[1] + a62 * k2[1] + a63 * k3[1] + a64 * k4[1] + a65 * k5[1]);
    f(x + dx, ty, ts, k6);

    const double y5 = y + dx * (b1 * k1[0] + b3 * k3[0] + b4 * k4[0] + b5 * k5[0] + b6 * k6[0]);
    const double s5 = s + dx * (b1 * k1[1] + b3 * k3[1] + b4 * k4[1] + b5 * k5[1] + b6 * k6[1]);
    f(x + dx, y5, s5, k7);

    const double ey =
        dx * (e1 * k1[0] + e3 * k3[0] + e4 * k4[0] + e5 * k5[0] + e6 * k6[0] + e7 * k7[0]);
    const double es =
        dx * (e1 * k1[1] + e3 * k3[1] + e4 * k4[1] + e5 * k5[1] + e6 * k6[1] + e7 * k7[1]);

    out[0] = y5;
    out[1] = s5;
    k1[0] = k7[0];
    k1[1] = k7[1];
    return std::hypot(ey, es);
}

}  // namespace detail

// Integrate y'' + q(x) y = 0 from nodes.front() with y = y0, y' = s0,
// recording (y, y') at every node.  Adaptive substeps between nodes keep the
// local error within opt tolerances.
template <class Q>
IvpSolution integrate_second_order(Q q, const std::vector<double>& nodes, double y0, double s0,
                                   IvpOptions opt = {}) {
    if (nodes.size() < 2) throw std::invalid_argument("integrate_second_order: need >= 2 nodes");
    IvpSolution sol;
    sol.h.nodes = nodes;
    sol.h.values.resize(nodes.size());
    sol.slope.resize(nodes.size());
    sol.h.values[0] = y0;
    sol.slope[0] = s0;

    double x = nodes.front();
    double y = y0, s = s0;
    double k1[2] = {s, -q(x) * y};
    const double span = nodes.back() - nodes.front();
    double dx = span / 64.0;
    const double dx_min = span * 1e-14;

    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double target = nodes[i];
        while (x < target) {
            bool clipped = false;
            double step = dx;
            if (x + step >= target) {
                step = target - x;
                clipped = true;
            }
            double out[2];
            double k1_saved[2] = {k1[0], k1[1]};
            const double err = detail::dp45_step(q, x, step, y, s, k1, out);
            const double scale =
                opt.atol + opt.rtol * std::max({std::abs(y), std::abs(out[0]), std::abs(s),
                                                std::abs(out[1])});
            if (err <= scale) {
                x = clipped ? target : x + step;
                y = out[0];
                s = out[1];
                ++sol.accepted_steps;
                if (!clipped) {
                    const double grow =
                        err > 0 ? std::min(5.0, 0.9 * std::pow(scale / err, 0.2)) : 5.0;
                    dx = step * grow;
                }
            } else {
                k1[0] = k1_saved[0];
                k1[1] = k1_saved[1];
                dx = step * std::max(0.2, 0.9 * std::pow(scale / err, 0.2));
                if (dx < dx_min)
                    throw SolverError("integrate_second_order: step underflow at x=" +
                                      std::to_string(x) + ", err=" + std::to_string(err));
            }
        }
        sol.h.values[i] = y;
        sol.slope[i] = s;
    }
    return sol;
}

// First zero of the solution of y'' + q(x) y = 0, y(a) = 0, y'(a) = 1, in
// (a, b].  The adaptive sweep brackets the sign change; the bracket is then
// bisected with short fixed-step integrations restarted from the step head.
template <class Q>
std::optional<double> first_zero_after(Q q, double a, double b, IvpOptions opt = {}) {
    const int coarse = 512;
    std::vector<double> nodes = uniform_grid(a, b, coarse + 1);
    IvpSolution sweep = integrate_second_order(q, nodes, 0.0, 1.0, opt);

    std::size_t lo = 0;
    bool found = false;
    for (std::size_t i = 1; i < sweep.h.values.size(); ++i) {
        if (sweep.h.values[i] == 0.0 && i + 1 == sweep.h.values.size()) {
            return nodes[i];
        }
        if (sweep.h.values[i - 1] > 0.0 && sweep.h.values[i] <= 0.0) {
            lo = i - 1;
            found = true;
            break;
        }
    }
    if (!found) return std::nullopt;

    // Bisect in (nodes[lo], nodes[lo+1]) restarting from the bracket head.
    const double x0 = nodes[lo];
    const double y0 = sweep.h.values[lo];
    const double s0 = sweep.slope[lo];
    double left = x0, right = nodes[lo + 1];
    auto value_at = [&](double xx) {
        if (xx <= x0) return y0;
        std::vector<double> sub = {x0, xx};
        return integrate_second_order(q, sub, y0, s0, opt).h.values.back();
    };
    for (int iter = 0; iter < 60 && (right - left) > 1e-15 * (b - a); ++iter) {
        const double mid = 0.5 * (left + right);
        if (value_at(mid) > 0.0)
            left = mid;
        else
            right = mid;
    }
    return 0.5 * (left + right);
}

}  // namespace hypergap
