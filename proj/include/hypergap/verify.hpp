#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "hypergap/angular.hpp"
#include "hypergap/domain.hpp"
#include "hypergap/fd_oracle.hpp"
#include "hypergap/hessian.hpp"
#include "hypergap/spectrum.hpp"
#include "hypergap/sturm.hpp"
#include "hypergap/sweep.hpp"

namespace hypergap {

struct VerifyOptions {
    std::size_t grid_size = 1201;
    int n_t = 33;
    bool corrupt_eigensolver = false;  // fault-injection hook for harness self-tests
    unsigned jobs = 1;
};

struct CheckFailure {
    std::string check;
    std::string domain;
    std::string detail;
};

struct Witness {
    DomainParams domain;
    double normalized_gap = 0.0;
};

struct VerificationSummary {
    int checks_run = 0;
    std::vector<CheckFailure> failures;
    std::vector<Witness> witnesses;            // normalized gap < 1
    std::vector<Witness> large_gap_witnesses;  // normalized gap > 1
};

namespace detail {

struct Checker {
    VerificationSummary* sum;
    void operator()(const std::string& check, const std::string& domain, bool pass,
                    const std::string& detail) {
        ++sum->checks_run;
        if (!pass) sum->failures.push_back({check, domain, detail});
    }
};

inline std::vector<DomainParams> builtin_domains() {
    std::vector<DomainParams> out;
    for (double c : {0.4, 0.2, 0.1, 0.05})
        for (double ts : {0.7, 0.9, 1.1, 1.3}) out.push_back(DomainParams::symmetric(c, ts));
    out.push_back(DomainParams::make(0.2, 0.7, 2.0));
    out.push_back(DomainParams::make(0.2, 0.25 * kPi, 0.625 * kPi));
    out.push_back(DomainParams::make(0.1, 0.9, 2.2));
    out.push_back(DomainParams::symmetric(4.0, 1.45));
    return out;
}

inline std::vector<DomainParams> path_check_domains() {
    return {DomainParams::symmetric(0.2, 0.25 * kPi), DomainParams::symmetric(0.1, 1.1),
            DomainParams::make(0.2, 0.25 * kPi, 0.625 * kPi), DomainParams::symmetric(0.05, 0.8),
            DomainParams::make(0.1, 0.7, 2.1)};
}

}  // namespace detail

inline VerificationSummary run_verification(VerifyOptions opts = {}) {
    VerificationSummary sum;
    detail::Checker check{&sum};
    const SolveOptions solve{opts.grid_size};

    // Per-domain closed-form bound checks over the built-in grid.
    const std::vector<DomainParams> domains = detail::builtin_domains();
    std::vector<GapReport> reports(domains.size());
    std::vector<std::string> report_errors(domains.size());
    parallel_for_indexed(domains.size(), opts.jobs, [&](std::size_t i) {
        try {
            reports[i] = fundamental_gap(domains[i], solve);
        } catch (const std::exception& e) {
            report_errors[i] = e.what();
        }
    });

    for (std::size_t i = 0; i < domains.size(); ++i) {
        const DomainParams& d = domains[i];
        const std::string tag = d.label();
        if (!report_errors[i].empty()) {
            check("solve", tag, false, report_errors[i]);
            continue;
        }
        GapReport rep = reports[i];
        if (opts.corrupt_eigensolver) {
            rep.lambda2 *= 1.01;  // injected fault: every downstream bound must notice
            rep.gap = rep.lambda2 - rep.lambda1;
            rep.normalized_gap = rep.gap * rep.diameter * rep.diameter / (3.0 * kPi * kPi);
        }

        const double c2 = d.c * d.c;
        const EigenBounds b1 = eigen_bounds(AngularProblem::make(c2, d.theta0, d.theta1), 1);
        const EigenBounds b14 =
            eigen_bounds(AngularProblem::make(4.0 * c2, d.theta0, d.theta1), 1);
        const EigenBounds b2 = eigen_bounds(AngularProblem::make(c2, d.theta0, d.theta1), 2);
        const double l2c2 = opts.corrupt_eigensolver ? rep.lambda2_c2 * 1.01 : rep.lambda2_c2;
        const double l14 = opts.corrupt_eigensolver ? rep.lambda1_4c2 * 1.01 : rep.lambda1_4c2;
        check("eigen-bounds", tag,
              rep.lambda1 > b1.lower && rep.lambda1 < b1.upper && l14 > b14.lower &&
                  l14 < b14.upper && l2c2 > b2.lower && l2c2 < b2.upper,
              "ground sandwich or index-2 sandwich breached");

        if (rep.condition_bound_c_holds) {
            check("branch-selection", tag, l14 <= l2c2 * (1.0 + 1e-12),
                  "radial-branch condition holds but angular branch is lower");
            const RoughGapBounds gb = rough_gap_bounds(d);
            check("rough-gap", tag, rep.gap > gb.lower && rep.gap < gb.upper,
                  "gap outside (3 sin^2 theta* c^2, 3 c^2): gap=" + std::to_string(rep.gap));
            const NormalizedGapSandwich ns = normalized_gap_sandwich(d.theta_star, d.c);
            check("normalized-gap-sandwich", tag,
                  rep.normalized_gap > ns.lower && rep.normalized_gap < ns.upper,
                  "normalized gap outside its closed-form sandwich");
        }

        const DiameterBounds db = diameter_bounds(d);
        const double slack = 1e-11 * rep.diameter;
        check("diameter-sandwich", tag,
              rep.diameter >= db.lower - slack && rep.diameter <= db.upper + slack &&
                  rep.diameter >= db.linear_lower - slack &&
                  rep.diameter <= db.linear_upper + slack,
              "diameter outside closed-form bounds");
        const RatioSandwich rs = pi2_over_c2d2_bounds(d.theta_star, d.c);
        const double ratio = kPi * kPi / (c2 * rep.diameter * rep.diameter);
        check("diameter-ratio-sandwich", tag, ratio >= rs.lower - 1e-12 && ratio <= rs.upper + 1e-12,
              "pi^2/(c^2 D^2) outside its sandwich");

        if (rep.normalized_gap < 1.0) sum.witnesses.push_back({d, rep.normalized_gap});
        if (rep.normalized_gap > 1.0) sum.large_gap_witnesses.push_back({d, rep.normalized_gap});
    }

    // Homotopy-path identities on a smaller panel.
    const std::vector<DomainParams> path_domains = detail::path_check_domains();
    for (const DomainParams& d : path_domains) {
        const std::string tag = d.label();
        try {
            const std::vector<PathSample> path = gap_path(d, opts.n_t, solve);
            const PathIdentity id = path_gap_identity(d, opts.n_t, solve, &path);
            check("path-identity", tag, id.residual <= 1e-5,
                  "residual " + std::to_string(id.residual));
            check("path-upper-bound", tag,
                  id.lhs <= 3.0 * d.c * d.c * id.max_ratio * (1.0 + 1e-9) &&
                      id.max_ratio < 1.0,
                  "branch gap vs 3 c^2 max R inconsistent");
            double max_ratio = 0.0, min_ratio = 1.0;
            for (const PathSample& s : path) {
                max_ratio = std::max(max_ratio, s.ratio);
                min_ratio = std::min(min_ratio, s.ratio);
            }
            const double s2 = std::pow(std::sin(d.theta_star), 2);
            check("ratio-range", tag, min_ratio > s2 && max_ratio < 1.0,
                  "quadrature ratio left (sin^2 theta*, 1)");
            // five-point slope of lambda(t) against 3 c^2 R(t)
            bool slope_ok = true;
            double worst = 0.0;
            const double dt = 1.0 / static_cast<double>(opts.n_t - 1);
            for (std::size_t i = 2; i + 2 < path.size(); ++i) {
                const double num = -path[i + 2].lambda + 8.0 * path[i + 1].lambda -
                                   8.0 * path[i - 1].lambda + path[i - 2].lambda;
                const double slope = num / (12.0 * dt);
                const double expected = 3.0 * d.c * d.c * path[i].ratio;
                const double rel = std::abs(slope - expected) / expected;
                worst = std::max(worst, rel);
                if (rel > 1e-5) slope_ok = false;
            }
            check("path-slope", tag, slope_ok, "worst relative slope error " + std::to_string(worst));
        } catch (const std::exception& e) {
            check("path-identity", tag, false, e.what());
        }
        for (double t : {0.0, 0.5, 1.0}) {
            try {
                const EnvelopeVerdict v = sturm_envelopes(d, t, solve);
                check("envelopes", tag + " t=" + std::to_string(t),
                      v.lower_holds && v.upper_holds, v.note);
            } catch (const std::exception& e) {
                check("envelopes", tag + " t=" + std::to_string(t), false, e.what());
            }
        }
    }

    // Comparison-theorem harness self-tests with constant coefficients.
    {
        GridFunction b1, b2;
        b1.nodes = uniform_grid(0.0, 3.3, 257);
        b1.values.assign(257, 4.0);
        b2.nodes = b1.nodes;
        b2.values.assign(257, 1.0);
        try {
            const ZeroOrderingVerdict v = sturm_compare_i(b1, b2);
            const bool pass = v.conclusive && v.ordered && v.x1 && v.x2 &&
                              std::abs(*v.x1 - kPi / 2.0) < 1e-9 && std::abs(*v.x2 - kPi) < 1e-9;
            check("sturm-zero-ordering", "constants 4 vs 1", pass, "zeros off pi/sqrt(b)");
        } catch (const std::exception& e) {
            check("sturm-zero-ordering", "constants 4 vs 1", false, e.what());
        }
        GridFunction one, zero;
        one.nodes = uniform_grid(0.0, 0.5 * kPi, 257);
        one.values.assign(257, 1.0);
        zero.nodes = one.nodes;
        zero.values.assign(257, 0.0);
        try {
            const SolutionOrderingVerdict v = sturm_compare_ii(one, zero, 0.5 * kPi);
            check("sturm-solution-ordering", "sin vs identity", v.holds,
                  "max violation " + std::to_string(v.max_violation));
        } catch (const std::exception& e) {
            check("sturm-solution-ordering", "sin vs identity", false, e.what());
        }
    }

    // Closed-form sandwich re-derivation through integrated comparisons.
    try {
        const DomainParams d = DomainParams::symmetric(0.2, 0.25 * kPi);
        const auto shifts = shift_comparison_sweep(d, 0.25, 3, solve);
        bool pass = true;
        for (const ShiftComparison& sc : shifts)
            pass = pass && sc.ordered_closed_form && sc.ordered_numerically && sc.bounds_consistent;
        check("shift-comparison", d.label(), pass, "zero ordering or bound consistency failed");
    } catch (const std::exception& e) {
        check("shift-comparison", "(mu sweep)", false, e.what());
    }

    // Shooting vs finite-difference cross-validation.
    {
        const double cases[][4] = {
            {0.25, 0.25 * kPi, 0.75 * kPi, 1}, {0.25, 0.25 * kPi, 0.75 * kPi, 2},
            {0.0, 0.7, 2.0, 1},                {1.0, 0.9, 2.3, 2},
            {0.04, 0.6, 2.4, 3},               {0.16, 1.1, 1.9, 1},
            {0.5, 0.8, 2.0, 3},                {2.0, 1.0, 2.2, 1},
        };
        for (const auto& cs : cases) {
            const AngularProblem p = AngularProblem::make(cs[0], cs[1], cs[2], 800);
            const int k = static_cast<int>(cs[3]);
            const std::string tag = "(mu=" + std::to_string(cs[0]) + ", k=" + std::to_string(k) + ")";
            try {
                double shot = solve_eigen(p, k).lambda;
                if (opts.corrupt_eigensolver) shot *= 1.0 + 1e-4;
                const double fd = oracle_fd(p, k).lambda;
                const double rel = std::abs(shot - fd) / fd;
                check("oracle-agreement", tag, rel <= 1e-7, "relative gap " + std::to_string(rel));
            } catch (const std::exception& e) {
                check("oracle-agreement", tag, false, e.what());
            }
        }
    }

    // Headline certificates.
    try {
        const NarrowWedgeReport rep = shih_report(0.625 * kPi, 0.2, solve);
        check("narrow-wedge-certificate", "(theta1=5pi/8, c=0.2)",
              rep.certified && rep.gap.gap > rep.rough_floor,
              "gap " + std::to_string(rep.gap.gap) + " vs threshold " +
                  std::to_string(rep.threshold));
    } catch (const std::exception& e) {
        check("narrow-wedge-certificate", "(theta1=5pi/8, c=0.2)", false, e.what());
    }
    try {
        const LargeGapVerdict v = large_gap_regime(4.0, 1.45, solve);
        check("large-gap-regime", "(c=4, theta*=1.45)", v.exceeds_one,
              "normalized gap " + std::to_string(v.gap.normalized_gap));
    } catch (const std::exception& e) {
        check("large-gap-regime", "(c=4, theta*=1.45)", false, e.what());
    }

    return sum;
}

}  // namespace hypergap
