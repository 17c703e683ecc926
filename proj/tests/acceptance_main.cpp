// Acceptance suite: one pass/fail line per criterion, exit code = failures.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "hypergap/fd_oracle.hpp"
#include "hypergap/hessian.hpp"
#include "hypergap/spectrum.hpp"
#include "hypergap/sturm.hpp"
#include "hypergap/sweep.hpp"

using namespace hypergap;

namespace {

struct Gate {
    int failures = 0;
    int index = 0;
    void criterion(const std::string& name, bool pass, const std::string& detail) {
        ++index;
        std::printf("[%s] %02d %-32s %s\n", pass ? "PASS" : "FAIL", index, name.c_str(),
                    detail.c_str());
        if (!pass) ++failures;
    }
};

std::vector<DomainParams> path_panel() {
    std::vector<DomainParams> ds;
    for (double c : {0.2, 0.1})
        for (double ts : {0.7, 0.25 * kPi, 0.9, 1.1}) ds.push_back(DomainParams::symmetric(c, ts));
    ds.push_back(DomainParams::make(0.2, 0.25 * kPi, 0.625 * kPi));
    ds.push_back(DomainParams::symmetric(0.05, 0.8));
    return ds;
}

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

int main() {
    Gate gate;
    const unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    const SolveOptions solve{1201};

    // 1. a 20x20 sweep finds a domain whose gap undercuts the flat-space ceiling
    SweepResult sweep;
    {
        SweepSpec spec;
        for (int i = 0; i < 20; ++i) spec.c_values.push_back(0.05 + 0.35 * i / 19.0);
        for (int j = 0; j < 20; ++j) spec.theta_star_values.push_back(0.60 + 0.90 * j / 19.0);
        spec.symmetric = true;
        spec.grid_size = 1201;
        const auto t0 = std::chrono::steady_clock::now();
        sweep = run_sweep(spec, jobs);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        double best = 2.0;
        for (const SweepRecord& r : sweep.records) best = std::min(best, r.normalized_gap);
        const bool pass =
            secs <= 60.0 && sweep.records.size() == 400 && best < 1.0 - 1e-3;
        gate.criterion("witness-sweep", pass,
                       "min normalized gap " + fmt("%.6f", best) + " over 400 domains in " +
                           fmt("%.1f", secs) + " s");
    }

    // 2. large-frequency symmetric domains push the normalized gap above 1
    try {
        const LargeGapVerdict v = large_gap_regime(4.0, 1.45, solve);
        gate.criterion("large-frequency-regime", v.gap.normalized_gap > 1.0 + 1e-3,
                       "normalized gap " + fmt("%.6f", v.gap.normalized_gap) +
                           " (closed-form floor " + fmt("%.6f", v.sandwich_lower) + ")");
    } catch (const std::exception& e) {
        gate.criterion("large-frequency-regime", false, e.what());
    }

    // 3. rough gap bounds, strict with margin, on every radial-branch domain
    {
        int checked = 0;
        bool pass = true;
        double worst = 1e300;
        for (const SweepRecord& r : sweep.records) {
            if (!r.condition_c) continue;
            ++checked;
            const double c2 = r.c * r.c;
            const double s2 = std::pow(std::sin(r.theta_star), 2);
            const double lo_margin = r.gap - 3.0 * s2 * c2;
            const double hi_margin = 3.0 * c2 - r.gap;
            worst = std::min({worst, lo_margin / c2, hi_margin / c2});
            pass = pass && lo_margin >= 1e-9 * c2 && hi_margin >= 1e-9 * c2;
        }
        gate.criterion("rough-gap-bounds", pass && checked > 0,
                       std::to_string(checked) + " domains, worst margin " +
                           fmt("%.3e", worst) + " * c^2");
    }

    // 4. eigenvalue sandwiches, lower bound strict
    {
        bool pass = true;
        for (const SweepRecord& r : sweep.records) pass = pass && r.eigen_bounds_ok;
        int extra = 0;
        for (double mu : {0.0, 0.25, 1.0}) {
            for (const auto& [t0, t1] : {std::pair{0.25 * kPi, 0.75 * kPi},
                                         std::pair{0.7, 2.0}, std::pair{0.9, 2.3}}) {
                const AngularProblem p = AngularProblem::make(mu, t0, t1, 1201);
                for (int k : {1, 2}) {
                    const double lam = solve_eigen(p, k).lambda;
                    const EigenBounds b = eigen_bounds(p, k);
                    pass = pass && lam > b.lower && lam < b.upper;
                    ++extra;
                }
            }
        }
        gate.criterion("eigenvalue-sandwiches", pass,
                       "400 sweep domains x 3 eigenvalues + " + std::to_string(extra) +
                           " direct (mu, domain, k) cases");
    }

    // 5. diameter bounds on all domains; frequency ratio climbs to 1 as c shrinks
    {
        bool pass = true;
        for (const SweepRecord& r : sweep.records) pass = pass && r.diameter_bounds_ok;
        double prev = 0.0, final_ratio = 0.0;
        for (double c : {0.4, 0.2, 0.1, 0.05, 0.01}) {
            const DomainParams d = DomainParams::symmetric(c, 0.25 * kPi);
            const double D = diameter(d).diameter;
            const double ratio = kPi * kPi / (c * c * D * D);
            const RatioSandwich s = pi2_over_c2d2_bounds(d.theta_star, c);
            pass = pass && ratio > prev && ratio >= s.lower - 1e-12 && ratio <= s.upper + 1e-12;
            prev = final_ratio = ratio;
        }
        pass = pass && final_ratio >= 0.95;
        gate.criterion("diameter-bounds", pass,
                       "sandwiches on 400 domains; ratio at c=0.01 is " +
                           fmt("%.4f", final_ratio));
    }

    // 6. the integrated derivative identity closes the radial branch gap
    {
        bool pass = true;
        double worst = 0.0;
        int done = 0;
        for (const DomainParams& d : path_panel()) {
            try {
                const PathIdentity id = path_gap_identity(d, 33, solve);
                worst = std::max(worst, id.residual);
                ++done;
            } catch (const std::exception&) {
                pass = false;
            }
        }
        gate.criterion("path-identity", pass && done >= 10,
                       std::to_string(done) + " domains, worst residual " + fmt("%.2e", worst));
    }

    // 7. the quadrature-ratio ceiling is c-independent at fixed angles
    {
        double dmin = 1.0, dmax = 0.0;
        bool pass = true;
        for (double c : {0.4, 0.2, 0.1, 0.05}) {
            try {
                const RatioBound rb =
                    ratio_max_bound(DomainParams::symmetric(c, 0.25 * kPi), 33, solve);
                pass = pass && rb.delta > 0.0;
                dmin = std::min(dmin, rb.delta);
                dmax = std::max(dmax, rb.delta);
            } catch (const std::exception&) {
                pass = false;
            }
        }
        pass = pass && (dmax - dmin) / dmax <= 0.2;
        gate.criterion("ratio-ceiling-c-independence", pass,
                       "delta in [" + fmt("%.6f", dmin) + ", " + fmt("%.6f", dmax) +
                           "], spread " + fmt("%.2f", 100.0 * (dmax - dmin) / dmax) + "%");
    }

    // 8. sinusoid envelopes flank the path eigenfunctions pointwise
    {
        bool pass = true;
        int done = 0;
        std::string note;
        for (const DomainParams& d : path_panel()) {
            for (double t : {0.0, 0.5, 1.0}) {
                try {
                    const EnvelopeVerdict v = sturm_envelopes(d, t, solve);
                    pass = pass && v.lower_holds && v.upper_holds;
                    note = v.note;
                    ++done;
                } catch (const std::exception&) {
                    pass = false;
                }
            }
        }
        gate.criterion("eigenfunction-envelopes", pass && done >= 30,
                       std::to_string(done) + " (domain, t) checks; " + note);
    }

    // 9. shooting agrees with the finite-difference oracle
    {
        const double triples[6][3] = {
            {0.25, 0.25 * kPi, 0.75 * kPi}, {0.0, 0.7, 2.0},  {1.0, 0.9, 2.3},
            {0.04, 0.6, 2.4},               {0.5, 1.1, 1.9},  {2.0, 0.45, 2.6},
        };
        double worst = 0.0;
        int cases = 0;
        bool pass = true;
        for (const auto& t : triples) {
            const AngularProblem p = AngularProblem::make(t[0], t[1], t[2], 800);
            for (int k = 1; k <= 3; ++k) {
                const double shot = solve_eigen(p, k).lambda;
                const double fd = oracle_fd(p, k).lambda;
                worst = std::max(worst, std::abs(shot - fd) / fd);
                ++cases;
            }
        }
        for (const auto& [mu, k] : {std::pair{0.16, 1}, std::pair{4.0, 2}}) {
            const AngularProblem p = AngularProblem::make(mu, 0.8, 2.0, 800);
            const double shot = solve_eigen(p, k).lambda;
            const double fd = oracle_fd(p, k).lambda;
            worst = std::max(worst, std::abs(shot - fd) / fd);
            ++cases;
        }
        pass = worst <= 1e-7 && cases == 20;
        gate.criterion("oracle-agreement", pass,
                       std::to_string(cases) + " cases (k up to 3), worst relative gap " +
                           fmt("%.2e", worst));
    }

    // 10. narrow-wedge certificate plus the log-concavity failure report
    try {
        const NarrowWedgeReport rep = shih_report(0.625 * kPi, 0.2, solve);
        const DomainParams d = DomainParams::make(0.2, 0.25 * kPi, 0.625 * kPi);
        const ProbeReport probe = log_concavity_probe(d, 32, 32, solve);
        const bool hard = rep.certified && rep.margin >= 1e-3;
        gate.criterion("narrow-wedge-certificate", hard,
                       "gap/threshold - 1 = " + fmt("%.4f", rep.margin) + "; Hessian probe: " +
                           std::to_string(probe.positive_count) +
                           " positive-curvature points (soft report)");
    } catch (const std::exception& e) {
        gate.criterion("narrow-wedge-certificate", false, e.what());
    }

    // 11. comparison harness self-tests and the shift-sweep re-derivation
    {
        bool pass = true;
        std::string detail;
        try {
            GridFunction b1, b2;
            b1.nodes = uniform_grid(0.0, 3.3, 257);
            b1.values.assign(257, 4.0);
            b2.nodes = b1.nodes;
            b2.values.assign(257, 1.0);
            const ZeroOrderingVerdict v = sturm_compare_i(b1, b2);
            pass = v.conclusive && v.ordered && std::abs(*v.x1 - kPi / 2) <= 1e-9 &&
                   std::abs(*v.x2 - kPi) <= 1e-9;
            detail = "zeros " + fmt("%.12f", *v.x1) + ", " + fmt("%.12f", *v.x2);

            GridFunction one = b1, zero = b1;
            one.nodes = uniform_grid(0.0, 0.5 * kPi, 257);
            one.values.assign(257, 1.0);
            zero.nodes = one.nodes;
            zero.values.assign(257, 0.0);
            pass = pass && sturm_compare_ii(one, zero, 0.5 * kPi).holds;

            const auto shifts =
                shift_comparison_sweep(DomainParams::symmetric(0.2, 0.25 * kPi), 0.25, 3,
                                              solve);
            for (const ShiftComparison& sc : shifts)
                pass = pass && sc.ordered_closed_form && sc.ordered_numerically &&
                       sc.bounds_consistent;
            detail += "; shift sweep ordering holds at 3 shifts";
        } catch (const std::exception& e) {
            pass = false;
            detail = e.what();
        }
        gate.criterion("comparison-harness", pass, detail);
    }

    std::printf("%d/%d criteria passed\n", gate.index - gate.failures, gate.index);
    return gate.failures;
}
