#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hypergap/angular.hpp"
#include "hypergap/domain.hpp"
#include "hypergap/errors.hpp"
#include "hypergap/grid_function.hpp"
#include "hypergap/sturm.hpp"

namespace hypergap {

enum class Branch { radialSignChange, angularSignChange };

inline const char* to_string(Branch b) {
    return b == Branch::radialSignChange ? "radial" : "angular";
}

struct SolveOptions {
    std::size_t grid_size = 2001;
};

// Regime in which the radial branch gives the second eigenvalue:
// theta* > pi/6 and pi^2/L^2 * (4 sin^2 theta* - 1) / (4 - sin^2 theta*) >= c^2.
inline bool condition_bound_c(const DomainParams& d) {
    if (!(d.theta_star > kPi / 6.0)) return false;
    const double s2 = std::pow(std::sin(d.theta_star), 2);
    const double L = d.width;
    return kPi * kPi / (L * L) * (4.0 * s2 - 1.0) / (4.0 - s2) >= d.c * d.c;
}

struct GapReport {
    double lambda1 = 0.0;       // ground eigenvalue, separation constant c^2
    double lambda1_4c2 = 0.0;   // first eigenvalue at separation constant 4c^2
    double lambda2_c2 = 0.0;    // second eigenvalue at separation constant c^2
    double lambda2 = 0.0;       // min of the two candidates
    Branch branch = Branch::radialSignChange;
    double gap = 0.0;
    double diameter = 0.0;
    double normalized_gap = 0.0;  // gap * D^2 / (3 pi^2)
    bool condition_bound_c_holds = false;
};

// First two Dirichlet eigenvalues of the domain.  The second is always a
// genuine min over both sign-change branches, so the branch selection itself
// stays testable.
inline GapReport fundamental_gap(const DomainParams& d, SolveOptions opts = {}) {
    const double c2 = d.c * d.c;
    const AngularProblem ground = AngularProblem::make(c2, d.theta0, d.theta1, opts.grid_size);
    const AngularProblem radial = AngularProblem::make(4.0 * c2, d.theta0, d.theta1, opts.grid_size);

    GapReport rep;
    rep.lambda1 = solve_eigen(ground, 1).lambda;
    rep.lambda1_4c2 = solve_eigen(radial, 1).lambda;
    rep.lambda2_c2 = solve_eigen(ground, 2).lambda;
    if (rep.lambda1_4c2 <= rep.lambda2_c2) {
        rep.lambda2 = rep.lambda1_4c2;
        rep.branch = Branch::radialSignChange;
    } else {
        rep.lambda2 = rep.lambda2_c2;
        rep.branch = Branch::angularSignChange;
    }
    rep.gap = rep.lambda2 - rep.lambda1;
    rep.diameter = diameter(d).diameter;
    rep.normalized_gap = rep.gap * rep.diameter * rep.diameter / (3.0 * kPi * kPi);
    rep.condition_bound_c_holds = condition_bound_c(d);
    return rep;
}

// 3 sin^2(theta*) c^2 < gap < 3 c^2, valid in the radial-branch regime.
struct RoughGapBounds {
    double lower = 0.0;
    double upper = 0.0;
};

inline RoughGapBounds rough_gap_bounds(const DomainParams& d) {
    if (!condition_bound_c(d))
        throw InvalidRegime("rough_gap_bounds: domain outside the radial-branch regime " +
                            d.label());
    const double s2 = std::pow(std::sin(d.theta_star), 2);
    return {3.0 * s2 * d.c * d.c, 3.0 * d.c * d.c};
}

// --- homotopy in the separation constant ------------------------------------

// State along mu(t) = c^2 (1 + 3t): ground eigenvalue lambda(t) and the
// quadrature ratio R(t) = int h^2 / int csc^2 h^2 that controls d lambda/dt.
struct PathSample {
    double t = 0.0;
    double mu = 0.0;
    double lambda = 0.0;
    double ratio = 0.0;
};

namespace detail {

inline double quadrature_ratio(const AngularProblem& p, const GridFunction& h) {
    const double dx = p.width() / static_cast<double>(h.size() - 1);
    std::vector<double> sq(h.size()), wsq(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double s = std::sin(h.nodes[i]);
        sq[i] = h.values[i] * h.values[i];
        wsq[i] = sq[i] / (s * s);
    }
    return simpson(sq, dx) / simpson(wsq, dx);
}

}  // namespace detail

inline std::vector<PathSample> gap_path(const DomainParams& d, int n_t, SolveOptions opts = {}) {
    if (n_t < 9) throw std::invalid_argument("gap_path: need at least 9 samples");
    if (!condition_bound_c(d))
        throw InvalidRegime("gap_path: domain outside the radial-branch regime " + d.label());
    const double c2 = d.c * d.c;
    std::vector<PathSample> path(static_cast<std::size_t>(n_t));
    for (int i = 0; i < n_t; ++i) {
        PathSample& s = path[static_cast<std::size_t>(i)];
        s.t = static_cast<double>(i) / static_cast<double>(n_t - 1);
        s.mu = c2 * (1.0 + 3.0 * s.t);
        const AngularProblem p = AngularProblem::make(s.mu, d.theta0, d.theta1, opts.grid_size);
        const EigenPair pair = solve_eigen(p, 1);
        s.lambda = pair.lambda;
        s.ratio = detail::quadrature_ratio(p, pair.h);
    }
    return path;
}

// The integrated derivative identity: lambda(1) - lambda(0) equals
// 3 c^2 int_0^1 R(t) dt, and is bounded by 3 c^2 max_t R(t).
struct PathIdentity {
    double lhs = 0.0;       // lambda1^{4c^2} - lambda1^{c^2}
    double rhs = 0.0;       // 3 c^2 * Simpson integral of R(t)
    double residual = 0.0;  // |lhs - rhs| / lhs
    double max_ratio = 0.0;
};

inline PathIdentity path_gap_identity(const DomainParams& d, int n_t, SolveOptions opts = {},
                                      const std::vector<PathSample>* precomputed = nullptr) {
    std::vector<PathSample> local;
    const std::vector<PathSample>& path =
        precomputed ? *precomputed : (local = gap_path(d, n_t, opts), local);
    std::vector<double> ratios(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) ratios[i] = path[i].ratio;

    PathIdentity id;
    id.lhs = path.back().lambda - path.front().lambda;
    id.rhs = 3.0 * d.c * d.c * simpson(ratios, 1.0 / static_cast<double>(path.size() - 1));
    id.residual = std::abs(id.lhs - id.rhs) / id.lhs;
    id.max_ratio = *std::max_element(ratios.begin(), ratios.end());
    if (id.residual > 1e-5)
        throw InvariantViolation("path_gap_identity: residual " + std::to_string(id.residual) +
                                 " exceeds 1e-5 on " + d.label());
    if (id.lhs > 3.0 * d.c * d.c * id.max_ratio * (1.0 + 1e-9))
        throw InvariantViolation("path_gap_identity: branch gap exceeds 3 c^2 max R on " +
                                 d.label());
    return id;
}

// max_t R(t) <= 1 - delta with delta > 0; delta depends on the angles only,
// so it stays bounded away from zero as c shrinks.
struct RatioBound {
    double max_ratio = 0.0;
    double delta = 0.0;
};

inline RatioBound ratio_max_bound(const DomainParams& d, int n_t = 33, SolveOptions opts = {}) {
    const std::vector<PathSample> path = gap_path(d, n_t, opts);
    RatioBound rb;
    for (const PathSample& s : path) rb.max_ratio = std::max(rb.max_ratio, s.ratio);
    rb.delta = 1.0 - rb.max_ratio;
    if (!(rb.max_ratio < 1.0))
        throw InvariantViolation("ratio_max_bound: quadrature ratio reached 1 on " + d.label());
    return rb;
}

// --- explicit sinusoid envelopes for the path eigenfunctions ----------------

struct Envelopes {
    double sigma1 = 0.0;      // dominating constant coefficient
    double sigma2 = 0.0;      // dominated constant coefficient (may be negative)
    double theta_tilde = 0.0; // first zero of w1, theta0 + pi/sqrt(sigma1)
    GridFunction w1;
    GridFunction w2;
};

struct EnvelopeVerdict {
    Envelopes envelopes;
    bool lower_holds = false;  // w1 <= h on (theta0, min(theta_tilde, theta1))
    bool upper_holds = false;  // h <= w2 on (theta0, theta1)
    double max_lower_violation = 0.0;
    double max_upper_violation = 0.0;
    double tolerance = 0.0;
    // Direction note: the constant sigma1 dominates the variable coefficient,
    // so the matched-slope sinusoid stays BELOW the eigenfunction; sigma2 is
    // dominated and its sinusoid stays above.
    std::string note;
};

inline double envelope_sigma1(const DomainParams& d) {
    const double csc2 = 1.0 / std::pow(std::sin(d.theta_star), 2);
    const double L = d.width;
    return kPi * kPi * csc2 / (L * L) + (csc2 - 1.0) * 4.0 * d.c * d.c;
}

inline double envelope_sigma2(const DomainParams& d) {
    const double s2 = std::pow(std::sin(d.theta_star), 2);
    const double L = d.width;
    return s2 * kPi * kPi / (L * L) - (1.0 - s2) * 4.0 * d.c * d.c;
}

namespace detail {

// Solution of w'' + sigma w = 0, w(theta0) = 0, w'(theta0) = 1; sin, linear,
// or sinh branch according to the sign of sigma.
inline double matched_slope_sinusoid(double sigma, double dtheta) {
    if (sigma > 0.0) {
        const double r = std::sqrt(sigma);
        return std::sin(r * dtheta) / r;
    }
    if (sigma < 0.0) {
        const double r = std::sqrt(-sigma);
        return std::sinh(r * dtheta) / r;
    }
    return dtheta;
}

}  // namespace detail

inline EnvelopeVerdict sturm_envelopes(const DomainParams& d, double t, SolveOptions opts = {}) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument("sturm_envelopes: t must lie in [0, 1]");
    if (!condition_bound_c(d))
        throw InvalidRegime("sturm_envelopes: domain outside the radial-branch regime " +
                            d.label());

    const double mu = d.c * d.c * (1.0 + 3.0 * t);
    const AngularProblem p = AngularProblem::make(mu, d.theta0, d.theta1, opts.grid_size);
    const EigenPair pair = solve_eigen(p, 1, Normalization::unitSlope);

    EnvelopeVerdict v;
    v.envelopes.sigma1 = envelope_sigma1(d);
    v.envelopes.sigma2 = envelope_sigma2(d);
    v.envelopes.theta_tilde = kPi / std::sqrt(v.envelopes.sigma1) + d.theta0;
    v.envelopes.w1.nodes = pair.h.nodes;
    v.envelopes.w2.nodes = pair.h.nodes;
    v.envelopes.w1.values.resize(pair.h.size());
    v.envelopes.w2.values.resize(pair.h.size());
    for (std::size_t i = 0; i < pair.h.size(); ++i) {
        const double dtheta = pair.h.nodes[i] - d.theta0;
        v.envelopes.w1.values[i] = detail::matched_slope_sinusoid(v.envelopes.sigma1, dtheta);
        v.envelopes.w2.values[i] = detail::matched_slope_sinusoid(v.envelopes.sigma2, dtheta);
    }

    v.tolerance = 1e-9 * max_abs(pair.h);
    const double cut = std::min(v.envelopes.theta_tilde, d.theta1);
    for (std::size_t i = 1; i + 1 < pair.h.size(); ++i) {
        const double theta = pair.h.nodes[i];
        if (theta < cut) {
            const double excess = v.envelopes.w1.values[i] - pair.h.values[i];
            v.max_lower_violation = std::max(v.max_lower_violation, excess);
        }
        const double excess = pair.h.values[i] - v.envelopes.w2.values[i];
        v.max_upper_violation = std::max(v.max_upper_violation, excess);
    }
    v.lower_holds = v.max_lower_violation <= v.tolerance;
    v.upper_holds = v.max_upper_violation <= v.tolerance;
    v.note =
        "lower envelope direction: w1 <= h, from sigma1 >= lambda csc^2 - mu; "
        "upper: h <= w2, from lambda csc^2 - mu >= sigma2";
    if (!v.lower_holds || !v.upper_holds)
        throw InvariantViolation("sturm_envelopes: envelope ordering violated on " + d.label() +
                                 " at t=" + std::to_string(t) + " (lower excess " +
                                 std::to_string(v.max_lower_violation) + ", upper excess " +
                                 std::to_string(v.max_upper_violation) + ")");
    return v;
}

// --- closed-form re-derivation of the ground-eigenvalue sandwich ------------

// For each shift delta in [0, mu], the eigenfunction of the weighted problem
// at separation constant delta is flanked by constant-coefficient sinusoids
// whose first zeros a1, a2 must straddle theta1; that ordering is exactly the
// closed-form sandwich on lambda.
struct ShiftComparison {
    double delta = 0.0;
    double lambda = 0.0;
    double a1 = 0.0;  // theta0 + pi / sqrt(lambda csc^2 theta* - delta)
    double a2 = 0.0;  // theta0 + pi / sqrt(lambda - delta); +inf if coefficient <= 0
    bool ordered_closed_form = false;   // a1 < theta1 < a2
    bool ordered_numerically = false;   // first zeros from integrated comparisons agree
    bool bounds_consistent = false;     // ordering reproduces eigen_bounds to machine precision
};

inline std::vector<ShiftComparison> shift_comparison_sweep(const DomainParams& d,
                                                                  double mu, int n_delta,
                                                                  SolveOptions opts = {}) {
    if (n_delta < 1) throw std::invalid_argument("shift_comparison_sweep: n_delta >= 1");
    if (!(mu >= 0.0)) throw std::domain_error("shift_comparison_sweep: mu >= 0");
    std::vector<ShiftComparison> out;
    const double csc2 = 1.0 / std::pow(std::sin(d.theta_star), 2);
    for (int j = 0; j < n_delta; ++j) {
        ShiftComparison sc;
        sc.delta = n_delta == 1 ? mu : mu * static_cast<double>(j) / static_cast<double>(n_delta - 1);
        const AngularProblem p = AngularProblem::make(sc.delta, d.theta0, d.theta1, opts.grid_size);
        sc.lambda = solve_eigen(p, 1).lambda;

        const double b1 = sc.lambda * csc2 - sc.delta;
        const double b2 = sc.lambda - sc.delta;
        sc.a1 = d.theta0 + kPi / std::sqrt(b1);
        sc.a2 = b2 > 0.0 ? d.theta0 + kPi / std::sqrt(b2)
                         : std::numeric_limits<double>::infinity();
        sc.ordered_closed_form = sc.a1 < d.theta1 && d.theta1 < sc.a2;

        // integrated comparisons against the sampled middle coefficient; the
        // grid extends past theta1 so the slower zero a2 stays in range
        GridFunction mid;
        const double reach = std::min(d.theta1 + 0.2 * d.width, 0.5 * (d.theta1 + kPi));
        mid.nodes = uniform_grid(d.theta0, reach, 1025);
        mid.values.resize(mid.nodes.size());
        GridFunction top = mid, bottom = mid;
        for (std::size_t i = 0; i < mid.nodes.size(); ++i) {
            const double s = std::sin(mid.nodes[i]);
            mid.values[i] = sc.lambda / (s * s) - sc.delta;
            top.values[i] = b1;
            bottom.values[i] = b2;
        }
        const ZeroOrderingVerdict upper = sturm_compare_i(top, mid);
        const ZeroOrderingVerdict lower = sturm_compare_i(mid, bottom);
        const double slack = 1e-6 * d.width;
        sc.ordered_numerically = upper.ordered && lower.ordered && upper.x1 && upper.x2 &&
                                 std::abs(*upper.x2 - d.theta1) < slack &&
                                 std::abs(*upper.x1 - sc.a1) < slack &&
                                 (!lower.x2 || std::abs(*lower.x2 - sc.a2) < slack);

        const EigenBounds eb = eigen_bounds(p, 1);
        const double from_a1 = (sc.delta + kPi * kPi / (d.width * d.width)) / csc2;
        sc.bounds_consistent = std::abs(eb.lower - from_a1) <= 1e-12 * std::max(1.0, eb.lower) &&
                               std::abs(eb.upper - (sc.delta + kPi * kPi / (d.width * d.width))) <=
                                   1e-12 * std::max(1.0, eb.upper);
        out.push_back(sc);
    }
    return out;
}

// --- headline certificates ---------------------------------------------------

// Closed-form sandwich for the normalized gap in the radial-branch regime:
//   sin^2 theta* (1 + (c/pi) ln csc theta*)^2 < gap D^2/(3 pi^2)
//     < (1 + (c/pi)(2 ln csc theta* + eta))^2.
struct NormalizedGapSandwich {
    double lower = 0.0;
    double upper = 0.0;
};

inline NormalizedGapSandwich normalized_gap_sandwich(double theta_star, double c) {
    const double s = std::sin(theta_star);
    const double lncsc = -std::log(s);
    NormalizedGapSandwich ns;
    ns.lower = s * s * std::pow(1.0 + (c / kPi) * lncsc, 2);
    ns.upper = std::pow(1.0 + (c / kPi) * (2.0 * lncsc + diameter_eta(theta_star, c)), 2);
    return ns;
}

// Admissible c^2 ceiling for the wedge family with theta0 = pi/4,
// theta1 in (pi/2, 3pi/4): (pi/5) tan(pi/40) / (1 + (pi/40) tan(pi/40)).
inline double narrow_wedge_c2_bound() {
    const double t = std::tan(kPi / 40.0);
    return (kPi / 5.0) * t / (1.0 + (kPi / 40.0) * t);
}

struct NarrowWedgeReport {
    GapReport gap;
    double threshold = 0.0;  // (3/2) pi^2 / D^2
    double margin = 0.0;     // gap/threshold - 1
    bool certified = false;  // gap > threshold
    double rough_floor = 0.0;  // (3/2) c^2, from the rough bound at theta* = pi/4
};

// Gap certificate for the theta0 = pi/4 wedge family: even without
// log-concavity of the ground state, the gap stays above (3/2) pi^2 / D^2.
inline NarrowWedgeReport shih_report(double theta1, double c, SolveOptions opts = {}) {
    if (!(theta1 > 0.5 * kPi && theta1 < 0.75 * kPi))
        throw InvalidRegime("shih_report: theta1 must lie in (pi/2, 3pi/4)");
    if (!(c > 0.0 && c * c < narrow_wedge_c2_bound()))
        throw InvalidRegime("shih_report: c^2 must stay below " +
                            std::to_string(narrow_wedge_c2_bound()));
    const DomainParams d = DomainParams::make(c, 0.25 * kPi, theta1);
    NarrowWedgeReport rep;
    rep.gap = fundamental_gap(d, opts);
    rep.threshold = 1.5 * kPi * kPi / (rep.gap.diameter * rep.gap.diameter);
    rep.margin = rep.gap.gap / rep.threshold - 1.0;
    rep.certified = rep.gap.gap > rep.threshold;
    rep.rough_floor = 1.5 * c * c;
    return rep;
}

struct LargeGapVerdict {
    GapReport gap;
    double sin_threshold = 0.0;   // exp(pi/c - 1)
    double sandwich_lower = 0.0;  // closed-form floor of the normalized gap
    bool exceeds_one = false;     // normalized gap > 1
};

// Regime with gap above 3 pi^2 / D^2: c > pi and theta* close enough to pi/2
// that sin theta* >= exp(pi/c - 1), on the symmetric domain.
inline LargeGapVerdict large_gap_regime(double c, double theta_star, SolveOptions opts = {}) {
    if (!(c > kPi)) throw InvalidRegime("large_gap_regime: requires c > pi");
    LargeGapVerdict v;
    v.sin_threshold = std::exp(kPi / c - 1.0);
    if (!(std::sin(theta_star) >= v.sin_threshold))
        throw InvalidRegime("large_gap_regime: requires sin(theta*) >= exp(pi/c - 1) = " +
                            std::to_string(v.sin_threshold));
    const DomainParams d = DomainParams::symmetric(c, theta_star);
    if (!condition_bound_c(d))
        throw InvalidRegime("large_gap_regime: symmetric domain violates the radial-branch "
                            "condition at c=" + std::to_string(c));
    v.gap = fundamental_gap(d, opts);
    v.sandwich_lower = normalized_gap_sandwich(theta_star, c).lower;
    v.exceeds_one = v.gap.normalized_gap > 1.0;
    return v;
}

}  // namespace hypergap
