#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <ostream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "hypergap/domain.hpp"
#include "hypergap/spectrum.hpp"

#include <json.hpp>

namespace hypergap {

// Run fn(i) for i in [0, n) on `jobs` workers; results are indexed, so the
// merge order never depends on scheduling.
template <class Fn>
void parallel_for_indexed(std::size_t n, unsigned jobs, Fn fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    const unsigned count = std::min<unsigned>(jobs, static_cast<unsigned>(n));
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

struct SweepSpec {
    std::vector<double> c_values;
    std::vector<double> theta_star_values;  // used when symmetric
    bool symmetric = false;
    std::vector<std::pair<double, double>> theta_pairs;  // used otherwise
    std::string output_path;
    std::string format = "csv";  // csv | json
    std::size_t grid_size = 1201;
};

struct SweepRecord {
    double c = 0.0;
    double theta0 = 0.0;
    double theta1 = 0.0;
    double theta_star = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    Branch branch = Branch::radialSignChange;
    double diameter = 0.0;
    double gap = 0.0;
    double normalized_gap = 0.0;
    bool condition_c = false;
    bool eigen_bounds_ok = false;
    bool gap_bounds_ok = false;
    bool diameter_bounds_ok = false;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::vector<std::string> skipped;  // human-readable reasons, input order
};

namespace detail {

inline bool inside_strict(double x, double lo, double hi) { return x > lo && x < hi; }

inline SweepRecord evaluate_domain(const DomainParams& d, std::size_t grid_size) {
    SweepRecord r;
    r.c = d.c;
    r.theta0 = d.theta0;
    r.theta1 = d.theta1;
    r.theta_star = d.theta_star;
    const GapReport rep = fundamental_gap(d, SolveOptions{grid_size});
    r.lambda1 = rep.lambda1;
    r.lambda2 = rep.lambda2;
    r.branch = rep.branch;
    r.diameter = rep.diameter;
    r.gap = rep.gap;
    r.normalized_gap = rep.normalized_gap;
    r.condition_c = rep.condition_bound_c_holds;

    const double c2 = d.c * d.c;
    const EigenBounds b1 = eigen_bounds(AngularProblem::make(c2, d.theta0, d.theta1), 1);
    const EigenBounds b14 = eigen_bounds(AngularProblem::make(4.0 * c2, d.theta0, d.theta1), 1);
    const EigenBounds b2 = eigen_bounds(AngularProblem::make(c2, d.theta0, d.theta1), 2);
    r.eigen_bounds_ok = inside_strict(rep.lambda1, b1.lower, b1.upper) &&
                        inside_strict(rep.lambda1_4c2, b14.lower, b14.upper) &&
                        inside_strict(rep.lambda2_c2, b2.lower, b2.upper);

    if (r.condition_c) {
        const RoughGapBounds gb = rough_gap_bounds(d);
        r.gap_bounds_ok = inside_strict(rep.gap, gb.lower, gb.upper);
    } else {
        r.gap_bounds_ok = true;  // bound only stated in the radial-branch regime
    }

    const DiameterBounds db = diameter_bounds(d);
    const double slack = 1e-11 * rep.diameter;
    r.diameter_bounds_ok = rep.diameter >= db.lower - slack &&
                           rep.diameter <= db.upper + slack &&
                           rep.diameter >= db.linear_lower - slack &&
                           rep.diameter <= db.linear_upper + slack;
    return r;
}

inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace detail

inline SweepResult run_sweep(const SweepSpec& spec, unsigned jobs = 1) {
    if (spec.c_values.empty())
        throw std::invalid_argument("run_sweep: empty c grid");
    if (spec.symmetric && spec.theta_star_values.empty())
        throw std::invalid_argument("run_sweep: empty theta* grid");
    if (!spec.symmetric && spec.theta_pairs.empty())
        throw std::invalid_argument("run_sweep: no (theta0, theta1) pairs");

    std::vector<std::tuple<double, double, double>> inputs;  // (c, theta0, theta1)
    for (double c : spec.c_values) {
        if (spec.symmetric) {
            for (double ts : spec.theta_star_values) inputs.emplace_back(c, ts, kPi - ts);
        } else {
            for (const auto& [t0, t1] : spec.theta_pairs) inputs.emplace_back(c, t0, t1);
        }
    }
    std::sort(inputs.begin(), inputs.end());
    inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());

    std::vector<SweepRecord> slots(inputs.size());
    std::vector<std::string> errors(inputs.size());
    std::vector<char> ok(inputs.size(), 0);
    parallel_for_indexed(inputs.size(), jobs, [&](std::size_t i) {
        const auto& [c, t0, t1] = inputs[i];
        try {
            const DomainParams d = DomainParams::make(c, t0, t1);
            slots[i] = detail::evaluate_domain(d, spec.grid_size);
            ok[i] = 1;
        } catch (const std::exception& e) {
            errors[i] = "(c=" + detail::format_double(c) + ", theta0=" + detail::format_double(t0) +
                        ", theta1=" + detail::format_double(t1) + "): " + e.what();
        }
    });

    SweepResult out;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (ok[i])
            out.records.push_back(slots[i]);
        else
            out.skipped.push_back(errors[i]);
    }
    return out;
}

inline const char* sweep_csv_header() {
    return "c,theta0,theta1,theta_star,lambda1,lambda2,branch,diameter,gap,normalized_gap,"
           "condition_c,eigen_bounds_ok,gap_bounds_ok,diameter_bounds_ok";
}

inline void write_sweep_csv(std::ostream& os, const SweepResult& res, const std::string& meta) {
    os << "# " << meta << " skipped=" << res.skipped.size() << "\n";
    os << sweep_csv_header() << "\n";
    for (const SweepRecord& r : res.records) {
        os << detail::format_double(r.c) << ',' << detail::format_double(r.theta0) << ','
           << detail::format_double(r.theta1) << ',' << detail::format_double(r.theta_star) << ','
           << detail::format_double(r.lambda1) << ',' << detail::format_double(r.lambda2) << ','
           << to_string(r.branch) << ',' << detail::format_double(r.diameter) << ','
           << detail::format_double(r.gap) << ',' << detail::format_double(r.normalized_gap) << ','
           << (r.condition_c ? "true" : "false") << ',' << (r.eigen_bounds_ok ? "true" : "false")
           << ',' << (r.gap_bounds_ok ? "true" : "false") << ','
           << (r.diameter_bounds_ok ? "true" : "false") << "\n";
    }
}

inline nlohmann::json sweep_to_json(const SweepResult& res, const std::string& meta) {
    nlohmann::json root;
    root["meta"] = {{"tool", "hypergap"},
                    {"description", meta},
                    {"skipped", res.skipped},
                    {"columns", sweep_csv_header()}};
    nlohmann::json records = nlohmann::json::array();
    for (const SweepRecord& r : res.records) {
        records.push_back({{"c", r.c},
                           {"theta0", r.theta0},
                           {"theta1", r.theta1},
                           {"theta_star", r.theta_star},
                           {"lambda1", r.lambda1},
                           {"lambda2", r.lambda2},
                           {"branch", to_string(r.branch)},
                           {"diameter", r.diameter},
                           {"gap", r.gap},
                           {"normalized_gap", r.normalized_gap},
                           {"condition_c", r.condition_c},
                           {"eigen_bounds_ok", r.eigen_bounds_ok},
                           {"gap_bounds_ok", r.gap_bounds_ok},
                           {"diameter_bounds_ok", r.diameter_bounds_ok}});
    }
    root["records"] = std::move(records);
    return root;
}

}  // namespace hypergap
