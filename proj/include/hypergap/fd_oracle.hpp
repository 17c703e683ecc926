#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "hypergap/angular.hpp"
#include "hypergap/errors.hpp"
#include "hypergap/grid_function.hpp"

namespace hypergap {

namespace detail {

// Eigenvalues of B below x, by the LDL^T sign count on the symmetric
// tridiagonal (diag, off).  A vanishing pivot is replaced by -pivmin scaled
// so that off^2 / pivmin cannot overflow.
inline int sturm_count_below(const std::vector<double>& diag, const std::vector<double>& off,
                             double x) {
    double max_b2 = 1.0;
    for (double b : off) max_b2 = std::max(max_b2, b * b);
    const double pivmin = std::numeric_limits<double>::min() * max_b2;
    int count = 0;
    double d = diag[0] - x;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
    for (std::size_t i = 1; i < diag.size(); ++i) {
        d = diag[i] - x - off[i - 1] * off[i - 1] / d;
        if (std::abs(d) < pivmin) d = -pivmin;
        if (d < 0.0) ++count;
    }
    return count;
}

// k-th smallest eigenvalue (k >= 1) of the symmetric tridiagonal matrix.
inline double tridiag_kth_eigenvalue(const std::vector<double>& diag,
                                     const std::vector<double>& off, int k) {
    double lo = diag[0], hi = diag[0];
    for (std::size_t i = 0; i < diag.size(); ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(off[i - 1]);
        if (i < off.size()) r += std::abs(off[i]);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count_below(diag, off, mid) >= k)
            hi = mid;
        else
            lo = mid;
        if (hi - lo <= 1e-15 * std::max(std::abs(lo), std::abs(hi)) + 1e-300) break;
    }
    return 0.5 * (lo + hi);
}

// Solve (T - shift I) x = b for tridiagonal T with partial pivoting.
inline void tridiag_shifted_solve(const std::vector<double>& diag,
                                  const std::vector<double>& off, double shift,
                                  std::vector<double>& x) {
    const std::size_t n = diag.size();
    std::vector<double> a(n), b(n, 0.0), c(n, 0.0);  // main, upper, upper+1 bands
    for (std::size_t i = 0; i < n; ++i) a[i] = diag[i] - shift;
    for (std::size_t i = 0; i + 1 < n; ++i) b[i] = off[i];
    std::vector<double> low(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) low[i] = off[i];

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(low[i]) > std::abs(a[i])) {  // swap rows i, i+1
            std::swap(a[i], low[i]);
            std::swap(b[i], a[i + 1]);
            if (i + 2 < n) std::swap(c[i], b[i + 1]);
            std::swap(x[i], x[i + 1]);
        }
        if (a[i] == 0.0) a[i] = std::numeric_limits<double>::min();
        const double m = low[i] / a[i];
        a[i + 1] -= m * b[i];
        if (i + 2 < n) b[i + 1] -= m * c[i];
        x[i + 1] -= m * x[i];
    }
    if (a[n - 1] == 0.0) a[n - 1] = std::numeric_limits<double>::min();
    x[n - 1] /= a[n - 1];
    for (std::size_t ii = n - 1; ii-- > 0;) {
        double v = x[ii] - b[ii] * x[ii + 1];
        if (ii + 2 < n) v -= c[ii] * x[ii + 2];
        x[ii] = v / a[ii];
    }
}

struct FdResult {
    double lambda = 0.0;
    std::vector<double> interior;  // eigenvector at interior nodes, W^{-1/2}-mapped back
};

// Discretize -h'' + mu h = lambda w(theta) h on interior nodes, reduce with
// W^{-1/2} to a symmetric tridiagonal standard problem, and extract the k-th
// eigenpair.
template <class Weight>
FdResult fd_eigen_single(const AngularProblem& p, int k, Weight w, std::size_t grid_size) {
    const std::size_t m = grid_size - 2;
    const double dx = p.width() / static_cast<double>(grid_size - 1);
    std::vector<double> wv(m), diag(m), off(m > 0 ? m - 1 : 0);
    for (std::size_t i = 0; i < m; ++i) {
        const double theta = p.theta0 + dx * static_cast<double>(i + 1);
        wv[i] = w(theta);
    }
    const double d0 = 2.0 / (dx * dx) + p.mu;
    for (std::size_t i = 0; i < m; ++i) diag[i] = d0 / wv[i];
    for (std::size_t i = 0; i + 1 < m; ++i)
        off[i] = -1.0 / (dx * dx) / std::sqrt(wv[i] * wv[i + 1]);

    FdResult res;
    res.lambda = tridiag_kth_eigenvalue(diag, off, k);

    // Inverse iteration with a slightly detuned shift.
    std::vector<double> z(m);
    const double L = p.width();
    for (std::size_t i = 0; i < m; ++i)
        z[i] = std::sin(static_cast<double>(k) * kPi * dx * static_cast<double>(i + 1) / L);
    const double shift = res.lambda * (1.0 + 1e-11) + 1e-300;
    for (int it = 0; it < 3; ++it) {
        tridiag_shifted_solve(diag, off, shift, z);
        const double nrm = max_abs(z);
        if (!(nrm > 0.0) || !std::isfinite(nrm))
            throw SolverError("fd_eigen_single: inverse iteration failed");
        for (double& v : z) v /= nrm;
    }
    res.interior.resize(m);
    for (std::size_t i = 0; i < m; ++i) res.interior[i] = z[i] / std::sqrt(wv[i]);
    return res;
}

}  // namespace detail

// Brute-force finite-difference eigenvalue with one Richardson extrapolation
// across grid_size and 2*grid_size nodes; independent of the shooting path.
template <class Weight>
EigenPair oracle_fd_with_weight(const AngularProblem& p, int k, Weight w) {
    if (p.grid_size < 200) throw std::domain_error("oracle_fd: grid_size must be >= 200");
    if (k < 1) throw std::domain_error("oracle_fd: k must be >= 1");
    const std::size_t g1 = p.grid_size;
    const std::size_t g2 = 2 * p.grid_size;
    detail::FdResult coarse = detail::fd_eigen_single(p, k, w, g1);
    detail::FdResult fine = detail::fd_eigen_single(p, k, w, g2);

    const double L = p.width();
    const double h1 = L / static_cast<double>(g1 - 1);
    const double h2 = L / static_cast<double>(g2 - 1);
    // eliminate the O(h^2) term of the central difference
    const double lambda =
        fine.lambda + (fine.lambda - coarse.lambda) * h2 * h2 / (h1 * h1 - h2 * h2);

    EigenPair pair;
    pair.lambda = lambda;
    pair.k = k;
    pair.normalization = Normalization::unitL2;
    pair.h.nodes = uniform_grid(p.theta0, p.theta1, g2);
    pair.h.values.assign(g2, 0.0);
    for (std::size_t i = 0; i < fine.interior.size(); ++i) pair.h.values[i + 1] = fine.interior[i];
    // orient like the shooting solution: positive initial slope
    if (pair.h.values[1] < 0.0)
        for (double& v : pair.h.values) v = -v;
    std::vector<double> sq(g2);
    for (std::size_t i = 0; i < g2; ++i) sq[i] = pair.h.values[i] * pair.h.values[i];
    const double nrm = std::sqrt(trapezoid(sq, h2));
    for (double& v : pair.h.values) v /= nrm;
    pair.endpoint_residual = 0.0;
    return pair;
}

inline EigenPair oracle_fd(const AngularProblem& p, int k) {
    return oracle_fd_with_weight(p, k, [](double theta) {
        const double s = std::sin(theta);
        return 1.0 / (s * s);
    });
}

}  // namespace hypergap
