#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hypergap/angular.hpp"
#include "hypergap/domain.hpp"
#include "hypergap/spectrum.hpp"

namespace hypergap {

// Covariant Hessian entries of a scalar v in the orthonormal frame
// e1 = r sin(theta) d/dr, e2 = sin(theta) d/dtheta, assembled from partial
// derivatives in (r, theta).
struct FramePartials {
    double vr = 0.0;
    double vrr = 0.0;
    double vtheta = 0.0;
    double vthetatheta = 0.0;
    double vrtheta = 0.0;
};

struct FrameHessian {
    double h11 = 0.0;
    double h12 = 0.0;
    double h22 = 0.0;
};

inline FrameHessian frame_hessian(double r, double theta, const FramePartials& p) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    FrameHessian h;
    h.h11 = r * r * s * s * p.vrr + r * s * s * p.vr - s * c * p.vtheta;
    h.h22 = s * s * p.vthetatheta + s * c * p.vtheta;
    h.h12 = r * s * s * p.vrtheta + r * s * c * p.vr;
    return h;
}

inline double frame_grad_sq(double r, double theta, const FramePartials& p) {
    const double s = std::sin(theta);
    const double g1 = r * s * p.vr;
    const double g2 = s * p.vtheta;
    return g1 * g1 + g2 * g2;
}

// One interior sample of the Hessian of log u1, u1(r, theta) = sin(c log r) h(theta).
struct HessianProbe {
    double r = 0.0;
    double theta = 0.0;
    double t = 0.0;      // log r
    double log_u = 0.0;
    double h11 = 0.0;
    double h12 = 0.0;
    double h22 = 0.0;
    double grad_sq = 0.0;
    double max_eigenvalue = 0.0;
    bool skipped = false;  // too close to the boundary for a stable log
};

struct ProbeReport {
    double lambda1 = 0.0;
    double mu = 0.0;
    std::vector<HessianProbe> probes;  // r-major, theta-minor order
    int positive_count = 0;
    int skipped_count = 0;
};

// Sample the covariant Hessian of log u1 on an interior grid.  The angular
// log-derivatives come from the eigenfunction ODE itself: with psi = log h,
// psi'' = (mu - lambda csc^2 theta) - psi'^2, no numerical differentiation.
// The radial factor contributes through phi = log sin(c t), t = log r, and
// every entry depends on r only via phi' and phi'':
//   H11 = sin^2 t.. = sin^2(theta) phi'' - sin(theta)cos(theta) psi'
//   H22 = sin^2(theta) psi'' + sin(theta)cos(theta) psi'
//   H12 = sin(theta)cos(theta) phi'
inline ProbeReport log_concavity_probe(const DomainParams& d, int grid_r, int grid_theta,
                                       SolveOptions opts = {}) {
    if (grid_r < 1 || grid_theta < 1)
        throw std::invalid_argument("log_concavity_probe: grids must be positive");
    ProbeReport rep;
    rep.mu = d.c * d.c;
    const AngularProblem p = AngularProblem::make(rep.mu, d.theta0, d.theta1, opts.grid_size);
    rep.lambda1 = solve_eigen(p, 1).lambda;

    // angular factor and its slope exactly at the probe angles
    std::vector<double> nodes;
    nodes.push_back(d.theta0);
    for (int j = 1; j <= grid_theta; ++j)
        nodes.push_back(d.theta0 + d.width * static_cast<double>(j) /
                                        static_cast<double>(grid_theta + 1));
    nodes.push_back(d.theta1);
    const IvpSolution sol =
        integrate_second_order(p.coefficient(rep.lambda1), nodes, 0.0, 1.0);

    double h_max = max_abs(sol.h);
    const double u_max = h_max;  // radial factor peaks at 1
    const double skip_level = 1e-8 * u_max;

    rep.probes.reserve(static_cast<std::size_t>(grid_r * grid_theta));
    const double span_t = kPi / d.c;
    for (int i = 1; i <= grid_r; ++i) {
        const double t = span_t * static_cast<double>(i) / static_cast<double>(grid_r + 1);
        const double f = std::sin(d.c * t);
        const double phi1 = d.c * std::cos(d.c * t) / f;        // phi' in t
        const double phi2 = -d.c * d.c / (f * f);               // phi'' in t
        for (int j = 1; j <= grid_theta; ++j) {
            HessianProbe pr;
            pr.t = t;
            pr.r = t < 700.0 ? std::exp(t) : std::numeric_limits<double>::infinity();
            pr.theta = nodes[static_cast<std::size_t>(j)];
            const double h = sol.h.values[static_cast<std::size_t>(j)];
            const double hp = sol.slope[static_cast<std::size_t>(j)];
            const double u = f * h;
            rep.probes.push_back(pr);
            HessianProbe& out = rep.probes.back();
            if (!(u > skip_level)) {
                out.skipped = true;
                ++rep.skipped_count;
                continue;
            }
            out.log_u = std::log(u);
            const double s = std::sin(pr.theta);
            const double co = std::cos(pr.theta);
            const double psi1 = hp / h;
            const double psi2 = (rep.mu - rep.lambda1 / (s * s)) - psi1 * psi1;
            out.h11 = s * s * phi2 - s * co * psi1;
            out.h22 = s * s * psi2 + s * co * psi1;
            out.h12 = s * co * phi1;
            out.grad_sq = s * s * (phi1 * phi1 + psi1 * psi1);
            const double mean = 0.5 * (out.h11 + out.h22);
            const double off = std::hypot(0.5 * (out.h11 - out.h22), out.h12);
            out.max_eigenvalue = mean + off;
            if (out.max_eigenvalue > 0.0) ++rep.positive_count;
        }
    }
    return rep;
}

// Residual of the trace identity tr(Hess log u1) + |grad log u1|^2 = -lambda1.
inline double trace_identity_residual(const HessianProbe& pr, double lambda1) {
    return std::abs(pr.h11 + pr.h22 + pr.grad_sq + lambda1);
}

}  // namespace hypergap
