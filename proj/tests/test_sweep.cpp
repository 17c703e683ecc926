#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <map>
#include <sstream>
#include <vector>

#include "hypergap/sweep.hpp"
#include "hypergap/verify.hpp"

using namespace hypergap;
using Catch::Approx;

namespace {

SweepSpec small_spec() {
    SweepSpec spec;
    spec.c_values = {0.3, 0.1};
    spec.theta_star_values = {0.8, 1.2};
    spec.symmetric = true;
    spec.grid_size = 801;
    return spec;
}

}  // namespace

TEST_CASE("sweep validation") {
    SweepSpec empty;
    CHECK_THROWS_AS(run_sweep(empty), std::invalid_argument);
    SweepSpec no_angles;
    no_angles.c_values = {0.2};
    no_angles.symmetric = true;
    CHECK_THROWS_AS(run_sweep(no_angles), std::invalid_argument);
}

TEST_CASE("invalid grid points are skipped, not fatal") {
    SweepSpec spec = small_spec();
    spec.theta_star_values.push_back(1.7);  // theta0 past pi/2, rejected per domain
    const SweepResult res = run_sweep(spec);
    CHECK(res.records.size() == 4);
    CHECK(res.skipped.size() == 2);  // one per c value
}

TEST_CASE("records arrive in lexicographic input order with bounds certified") {
    const SweepResult res = run_sweep(small_spec());
    REQUIRE(res.records.size() == 4);
    CHECK(res.records[0].c == 0.1);
    CHECK(res.records[0].theta0 == 0.8);
    CHECK(res.records[1].theta0 == 1.2);
    CHECK(res.records[2].c == 0.3);
    for (const SweepRecord& r : res.records) {
        CHECK(r.eigen_bounds_ok);
        CHECK(r.gap_bounds_ok);
        CHECK(r.diameter_bounds_ok);
        CHECK(r.gap > 0.0);
    }
}

TEST_CASE("sweep output is deterministic and thread-count independent") {
    const SweepSpec spec = small_spec();
    std::ostringstream a, b, c;
    write_sweep_csv(a, run_sweep(spec, 1), "meta");
    write_sweep_csv(b, run_sweep(spec, 1), "meta");
    write_sweep_csv(c, run_sweep(spec, 3), "meta");
    CHECK(a.str() == b.str());
    CHECK(a.str() == c.str());
    CHECK(a.str().rfind("# meta", 0) == 0);
}

TEST_CASE("csv and json carry identical values") {
    const SweepResult res = run_sweep(small_spec());
    std::ostringstream csv;
    write_sweep_csv(csv, res, "meta");
    const nlohmann::json j = sweep_to_json(res, "meta");

    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);  // comment
    std::getline(in, line);  // header
    std::size_t idx = 0;
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string cell;
        std::vector<std::string> row;
        while (std::getline(cells, cell, ',')) row.push_back(cell);
        REQUIRE(row.size() == 14);
        const auto& rec = j["records"][idx];
        CHECK(std::strtod(row[0].c_str(), nullptr) == rec["c"].get<double>());
        CHECK(std::strtod(row[4].c_str(), nullptr) == rec["lambda1"].get<double>());
        CHECK(std::strtod(row[9].c_str(), nullptr) == rec["normalized_gap"].get<double>());
        CHECK(row[6] == rec["branch"].get<std::string>());
        CHECK((row[10] == "true") == rec["condition_c"].get<bool>());
        ++idx;
    }
    CHECK(idx == res.records.size());
}

TEST_CASE("normalized gap moves monotonically in theta* at fixed c") {
    SweepSpec spec;
    spec.c_values = {0.05, 0.2, 0.4};
    spec.theta_star_values = {0.6, 0.8, 1.0, 1.2, 1.4};
    spec.symmetric = true;
    spec.grid_size = 801;
    const SweepResult res = run_sweep(spec);
    std::map<double, std::vector<double>> rows;
    for (const SweepRecord& r : res.records) rows[r.c].push_back(r.normalized_gap);
    for (const auto& [c, vals] : rows) {
        REQUIRE(vals.size() == 5);
        bool inc = true, dec = true;
        for (std::size_t i = 1; i < vals.size(); ++i) {
            inc = inc && vals[i] > vals[i - 1];
            dec = dec && vals[i] < vals[i - 1];
        }
        INFO("c=" << c);
        CHECK((inc || dec));
    }
}

TEST_CASE("verification suite passes clean and fails corrupted") {
    VerifyOptions opts;
    opts.grid_size = 801;
    const VerificationSummary sum = run_verification(opts);
    CHECK(sum.checks_run > 100);
    CHECK(sum.failures.empty());
    CHECK(sum.witnesses.size() >= 1);
    CHECK(sum.large_gap_witnesses.size() >= 1);

    VerifyOptions bad = opts;
    bad.corrupt_eigensolver = true;
    CHECK_FALSE(run_verification(bad).failures.empty());
}
