#pragma once

#include <cmath>
#include <stdexcept>

namespace hypergap {

inline constexpr double kPi = 3.14159265358979323846;

// arcosh(1 + s) for s >= 0 without forming 1 + s.
// arcosh(1+s) = log1p(s + sqrt(s*(s+2))); stable for s near 0, and switches
// to the ln(2z) asymptotic once s*(s+2) would overflow.
inline double acosh1p(double s) {
    if (s < 0) {
        if (s > -1e-12) s = 0;  // rounding guard for exact-zero distances
        else throw std::domain_error("acosh1p: argument below 1");
    }
    if (s > 1e120) return std::log(2.0) + std::log1p(s);
    return std::log1p(s + std::sqrt(s * (s + 2.0)));
}

// Point of the upper half-plane, cartesian (x, y) with y > 0.
struct HPoint {
    double x = 0.0;
    double y = 1.0;

    static HPoint polar(double r, double theta) {
        return {r * std::cos(theta), r * std::sin(theta)};
    }
    double r() const { return std::hypot(x, y); }
    double theta() const { return std::atan2(y, x); }
};

// Hyperbolic distance, arcosh(1 + ((x2-x1)^2 + (y2-y1)^2) / (2 y1 y2)).
inline double distance(const HPoint& p, const HPoint& q) {
    if (!(p.y > 0.0) || !(q.y > 0.0))
        throw std::domain_error("distance: points must have positive ordinate");
    const double dx = q.x - p.x;
    const double dy = q.y - p.y;
    return acosh1p((dx * dx + dy * dy) / (2.0 * p.y * q.y));
}

// cosh of the distance between (cos a, sin a) and e^{pi/c}(cos b, sin b):
//   Psi(a, b) = (cosh(pi/c) - cos a cos b) / (sin a sin b),
// symmetric in (a, b).  Overflows to +inf for pi/c beyond ~710; corner
// distances go through corner_distance() which stays in log space there.
inline double psi(double alpha, double beta, double c) {
    if (!(alpha > 0.0 && alpha < kPi) || !(beta > 0.0 && beta < kPi))
        throw std::domain_error("psi: angles must lie in (0, pi)");
    if (!(c > 0.0)) throw std::domain_error("psi: c must be positive");
    return (std::cosh(kPi / c) - std::cos(alpha) * std::cos(beta)) /
           (std::sin(alpha) * std::sin(beta));
}

// arcosh(Psi(alpha, beta)) with cancellation-free Psi - 1:
//   Psi - 1 = 2 (sinh^2(T/2) + sin^2((a-b)/2)) / (sin a sin b),  T = pi/c.
// For large T the whole computation moves to log space,
//   arcosh(Psi) ~ T + log1p(e^{-2T} - 2 e^{-T} cos a cos b) - ln(sin a sin b).
inline double corner_distance(double alpha, double beta, double c) {
    if (!(alpha > 0.0 && alpha < kPi) || !(beta > 0.0 && beta < kPi))
        throw std::domain_error("corner_distance: angles must lie in (0, pi)");
    if (!(c > 0.0)) throw std::domain_error("corner_distance: c must be positive");
    const double T = kPi / c;
    const double ss = std::sin(alpha) * std::sin(beta);
    if (T > 350.0) {
        const double e = std::exp(-T);
        return T + std::log1p(e * e - 2.0 * e * std::cos(alpha) * std::cos(beta)) - std::log(ss);
    }
    const double sh = std::sinh(0.5 * T);
    const double sd = std::sin(0.5 * (alpha - beta));
    return acosh1p(2.0 * (sh * sh + sd * sd) / ss);
}

// Distance between (r cos a, r sin a) and (r cos b, r sin b); independent of r,
// equal to arcosh((1 - cos a cos b) / (sin a sin b)).
inline double same_radius_distance(double r, double alpha, double beta) {
    if (!(r > 0.0)) throw std::domain_error("same_radius_distance: r must be positive");
    return distance(HPoint::polar(r, alpha), HPoint::polar(r, beta));
}

}  // namespace hypergap
