#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hypergap {

// Sampled function on a strictly increasing node set.
struct GridFunction {
    std::vector<double> nodes;
    std::vector<double> values;

    std::size_t size() const { return nodes.size(); }
    bool empty() const { return nodes.empty(); }
};

inline std::vector<double> uniform_grid(double a, double b, std::size_t n) {
    if (n < 2 || !(b > a)) throw std::invalid_argument("uniform_grid: need n >= 2, b > a");
    std::vector<double> g(n);
    const double h = (b - a) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = a + h * static_cast<double>(i);
    g.back() = b;
    return g;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs(const GridFunction& f) { return max_abs(f.values); }

// Composite trapezoid on a uniform grid.
inline double trapezoid(const std::vector<double>& y, double dx) {
    if (y.size() < 2) throw std::invalid_argument("trapezoid: need at least 2 samples");
    double s = 0.5 * (y.front() + y.back());
    for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
    return s * dx;
}

// Composite Simpson on a uniform grid; an even node count is closed with a
// 3/8 block over the last three intervals.
inline double simpson(const std::vector<double>& y, double dx) {
    const std::size_t n = y.size();
    if (n < 3) {
        if (n == 2) return trapezoid(y, dx);
        throw std::invalid_argument("simpson: need at least 2 samples");
    }
    std::size_t last = n - 1;     // index closing the 1/3-rule range
    double tail = 0.0;
    if (last % 2 != 0) {          // odd interval count: peel a 3/8 block
        if (n >= 4) {
            last = n - 4;
            tail = 3.0 * dx / 8.0 * (y[last] + 3.0 * y[last + 1] + 3.0 * y[last + 2] + y[last + 3]);
        } else {
            return trapezoid(y, dx);
        }
    }
    double s = y[0] + y[last];
    for (std::size_t i = 1; i < last; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
    return s * dx / 3.0 + tail;
}

inline double simpson(const GridFunction& f) {
    if (f.size() < 2) throw std::invalid_argument("simpson: empty grid");
    const double dx = (f.nodes.back() - f.nodes.front()) / static_cast<double>(f.size() - 1);
    return simpson(f.values, dx);
}

// Interior sign changes, with an endpoint band where near-zero samples are
// ignored so boundary zeros are not miscounted: within the first/last 0.1% of
// the interval, |v| <= 1e-6 * max|v| counts as zero.
inline int node_count(const GridFunction& f) {
    if (f.size() < 3) throw std::invalid_argument("node_count: need interior samples");
    const double m = max_abs(f);
    if (m == 0.0) throw std::invalid_argument("node_count: all-zero function");
    const double a = f.nodes.front();
    const double b = f.nodes.back();
    const double band = 1e-3 * (b - a);
    const double tol = 1e-6 * m;

    int count = 0;
    int last_sign = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double v = f.values[i];
        const bool near_edge = (f.nodes[i] - a) < band || (b - f.nodes[i]) < band;
        if (near_edge && std::abs(v) <= tol) continue;
        const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
        if (s == 0) continue;
        if (last_sign != 0 && s != last_sign) ++count;
        last_sign = s;
    }
    return count;
}

}  // namespace hypergap
