#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hypergap/half_plane.hpp"

namespace hypergap {

// The wedge-annulus family: 1 < r < e^{pi/c}, theta0 < theta < theta1.
// Convexity needs theta0 < pi/2 < theta1; validation is strict unless the
// caller opts into exploratory ranges.
struct DomainParams {
    double c = 0.0;
    double theta0 = 0.0;
    double theta1 = 0.0;

    double theta_star = 0.0;  // min(theta0, pi - theta1)
    double width = 0.0;       // theta1 - theta0
    HPoint P, Q, R, S;        // corners, inner/outer at theta0 then outer/inner at theta1

    static DomainParams make(double c, double theta0, double theta1, bool relaxed = false) {
        if (!(c > 0.0)) throw std::domain_error("DomainParams: c must be positive");
        if (relaxed) {
            if (!(theta0 > 0.0 && theta0 < theta1 && theta1 < kPi))
                throw std::domain_error("DomainParams: need 0 < theta0 < theta1 < pi");
        } else {
            if (!(theta0 > 0.0 && theta0 < 0.5 * kPi))
                throw std::domain_error("DomainParams: theta0 must lie in (0, pi/2)");
            if (!(theta1 > 0.5 * kPi && theta1 < kPi))
                throw std::domain_error("DomainParams: theta1 must lie in (pi/2, pi)");
        }
        DomainParams d;
        d.c = c;
        d.theta0 = theta0;
        d.theta1 = theta1;
        d.theta_star = std::min(theta0, kPi - theta1);
        d.width = theta1 - theta0;
        const double outer = std::exp(std::min(kPi / c, 700.0));  // display-only beyond overflow
        d.P = HPoint::polar(1.0, theta0);
        d.Q = HPoint::polar(outer, theta0);
        d.R = HPoint::polar(outer, theta1);
        d.S = HPoint::polar(1.0, theta1);
        return d;
    }

    // theta1 = pi - theta0, the mirror-symmetric member with given theta_star.
    static DomainParams symmetric(double c, double theta_star, bool relaxed = false) {
        return make(c, theta_star, kPi - theta_star, relaxed);
    }

    std::string label() const {
        return "(c=" + std::to_string(c) + ", theta0=" + std::to_string(theta0) +
               ", theta1=" + std::to_string(theta1) + ")";
    }
};

enum class CornerPair { PQ, PR, RS };

inline const char* to_string(CornerPair p) {
    switch (p) {
        case CornerPair::PQ: return "PQ";
        case CornerPair::PR: return "PR";
        default: return "RS";
    }
}

// --- closed-form diameter bounds, as functions of (theta_star, c) ----------

// arcosh(csc(theta*) cosh(pi/c)): distance from an inner corner to the apex
// (0, e^{pi/c}), always within the closure.
inline double diameter_lower_bound(double theta_star, double c) {
    const double T = kPi / c;
    const double s = std::sin(theta_star);
    if (T > 350.0) return T - std::log(s) + std::log1p(std::exp(-2.0 * T));
    // csc * cosh(T) - 1 = (cosh T - 1 + (1 - s)) / s, cancellation-free
    return acosh1p((2.0 * std::pow(std::sinh(0.5 * T), 2) + (1.0 - s)) / s);
}

// arcosh(csc^2(theta*) cosh(pi/c) + cot^2(theta*)): diameter of the symmetric
// envelope domain with the same theta_star.
inline double diameter_upper_bound(double theta_star, double c) {
    const double T = kPi / c;
    const double s2 = std::pow(std::sin(theta_star), 2);
    const double c2 = 1.0 - s2;
    if (T > 350.0) {
        const double e = std::exp(-T);
        return T - std::log(s2) + std::log1p(e * e + 2.0 * e * c2);
    }
    // csc^2 cosh T + cot^2 - 1 = (cosh T - 1 + c2 (1 + cosh T)) / s2... expanded:
    // (csc^2 cosh T + cot^2) - 1 = (cosh T + c2 - s2) / s2 = (cosh T - 1 + 2 c2) / s2
    return acosh1p((2.0 * std::pow(std::sinh(0.5 * T), 2) + 2.0 * c2) / s2);
}

// Remainder eta(theta*, c) in the linearized upper bound
// D <= 2 ln(csc theta*) + pi/c + eta.
inline double diameter_eta(double theta_star, double c) {
    const double T = kPi / c;
    const double s2 = std::pow(std::sin(theta_star), 2);
    const double cos2 = 1.0 - s2;
    double first = 0.0, second = 0.0;
    if (T < 700.0) {
        const double a = std::cosh(T) + cos2;
        first = cos2 / std::sinh(T);
        second = std::sqrt(1.0 - s2 * s2) / (a + std::sqrt(a * a - 1.0));
    }  // both terms underflow past that
    return first + second;
}

struct DiameterReport {
    double diameter = 0.0;
    CornerPair achieving_pair = CornerPair::PR;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    double eta = 0.0;
};

struct DiameterBounds {
    double lower = 0.0;       // arcosh form
    double upper = 0.0;       // arcosh form
    double linear_lower = 0.0;  // ln(csc theta*) + pi/c
    double linear_upper = 0.0;  // 2 ln(csc theta*) + pi/c + eta
    double eta = 0.0;
};

inline DiameterBounds diameter_bounds(const DomainParams& d) {
    DiameterBounds b;
    b.lower = diameter_lower_bound(d.theta_star, d.c);
    b.upper = diameter_upper_bound(d.theta_star, d.c);
    b.eta = diameter_eta(d.theta_star, d.c);
    const double lncsc = -std::log(std::sin(d.theta_star));
    b.linear_lower = lncsc + kPi / d.c;
    b.linear_upper = 2.0 * lncsc + kPi / d.c + b.eta;
    return b;
}

// Diameter is the max over the corner distances PQ, PR, RS (SQ mirrors PR,
// SP mirrors QR, and QR is dominated by PR).
inline DiameterReport diameter(const DomainParams& d) {
    DiameterReport rep;
    const double dPQ = corner_distance(d.theta0, d.theta0, d.c);
    const double dPR = corner_distance(d.theta0, d.theta1, d.c);
    const double dRS = corner_distance(d.theta1, d.theta1, d.c);
    rep.diameter = dPQ;
    rep.achieving_pair = CornerPair::PQ;
    if (dPR > rep.diameter) {
        rep.diameter = dPR;
        rep.achieving_pair = CornerPair::PR;
    }
    if (dRS > rep.diameter) {
        rep.diameter = dRS;
        rep.achieving_pair = CornerPair::RS;
    }
    const DiameterBounds b = diameter_bounds(d);
    rep.lower_bound = b.lower;
    rep.upper_bound = b.upper;
    rep.eta = b.eta;
    return rep;
}

// Closed-form sandwich for pi^2 / (c^2 D^2):
//   (1 + (c/pi)(2 ln csc theta* + eta))^{-2} <= pi^2/(c^2 D^2) <= (1 + (c/pi) ln csc theta*)^{-2}
struct RatioSandwich {
    double lower = 0.0;
    double upper = 0.0;
};

inline RatioSandwich pi2_over_c2d2_bounds(double theta_star, double c) {
    const double lncsc = -std::log(std::sin(theta_star));
    const double eta = diameter_eta(theta_star, c);
    RatioSandwich s;
    s.lower = std::pow(1.0 + (c / kPi) * (2.0 * lncsc + eta), -2.0);
    s.upper = std::pow(1.0 + (c / kPi) * lncsc, -2.0);
    return s;
}

}  // namespace hypergap
