#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hypergap/domain.hpp"
#include "hypergap/errors.hpp"
#include "hypergap/hessian.hpp"
#include "hypergap/spectrum.hpp"
#include "hypergap/sweep.hpp"
#include "hypergap/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitInput = 2;
constexpr int kExitIo = 3;

struct DomainFlags {
    double c = 0.0;
    double theta0 = -1.0;
    double theta1 = -1.0;
    double theta_star = -1.0;
    bool symmetric = false;
    bool shih = false;
};

// Flat `key = value` config support: values fill in for flags the user did
// not pass, so the command line always wins.  Returns extra argv tokens.
std::vector<std::string> config_tokens(const std::string& path,
                                       const std::vector<std::string>& user_args) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    auto user_has = [&user_args](const std::string& flag) {
        for (const std::string& a : user_args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    std::vector<std::string> extra;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config") continue;
        const std::string flag = "--" + key;
        if (user_has(flag)) continue;
        if (value == "true" || value == "yes") {
            extra.push_back(flag);
        } else if (value == "false" || value == "no") {
            // omitted flag stays off
        } else {
            extra.push_back(flag);
            std::istringstream parts(value);  // lists are space separated
            std::string v;
            while (parts >> v) extra.push_back(v);
        }
    }
    return extra;
}

void add_domain_flags(CLI::App* cmd, DomainFlags& f, bool need_c = true) {
    auto* c = cmd->add_option("--c", f.c, "radial frequency c > 0");
    if (need_c) c->required();
    cmd->add_option("--theta0", f.theta0, "lower angle, radians in (0, pi/2)");
    cmd->add_option("--theta1", f.theta1, "upper angle, radians in (pi/2, pi)");
    cmd->add_option("--theta-star", f.theta_star, "min(theta0, pi - theta1), radians");
    cmd->add_flag("--symmetric", f.symmetric, "use theta1 = pi - theta0 (with --theta-star)");
    cmd->add_flag("--shih", f.shih, "preset theta0 = pi/4, theta1 = 5pi/8");
}

hypergap::DomainParams domain_from_flags(const DomainFlags& f) {
    using hypergap::kPi;
    if (f.shih) return hypergap::DomainParams::make(f.c, 0.25 * kPi, 0.625 * kPi);
    if (f.symmetric) {
        if (f.theta_star > 0.0) return hypergap::DomainParams::symmetric(f.c, f.theta_star);
        if (f.theta0 > 0.0) return hypergap::DomainParams::symmetric(f.c, f.theta0);
        throw std::invalid_argument("--symmetric needs --theta-star (or --theta0)");
    }
    if (f.theta0 > 0.0 && f.theta1 > 0.0)
        return hypergap::DomainParams::make(f.c, f.theta0, f.theta1);
    throw std::invalid_argument("need --theta0 and --theta1, or --symmetric with --theta-star");
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

unsigned default_jobs() { return 1; }

int run_gap(const DomainFlags& flags, std::size_t grid) {
    const hypergap::DomainParams d = domain_from_flags(flags);
    const hypergap::GapReport rep = hypergap::fundamental_gap(d, {grid});
    std::cout << "c = " << fmt(d.c) << "\n"
              << "theta0 = " << fmt(d.theta0) << "\n"
              << "theta1 = " << fmt(d.theta1) << "\n"
              << "theta_star = " << fmt(d.theta_star) << "\n"
              << "lambda1 = " << fmt(rep.lambda1) << "\n"
              << "lambda1_4c2 = " << fmt(rep.lambda1_4c2) << "\n"
              << "lambda2_c2 = " << fmt(rep.lambda2_c2) << "\n"
              << "lambda2 = " << fmt(rep.lambda2) << "\n"
              << "branch = " << hypergap::to_string(rep.branch) << "\n"
              << "gap = " << fmt(rep.gap) << "\n"
              << "diameter = " << fmt(rep.diameter) << "\n"
              << "normalized_gap = " << fmt(rep.normalized_gap) << "\n"
              << "condition_c = " << (rep.condition_bound_c_holds ? "true" : "false") << "\n";
    return kExitOk;
}

int run_diameter(const DomainFlags& flags) {
    const hypergap::DomainParams d = domain_from_flags(flags);
    const hypergap::DiameterReport rep = hypergap::diameter(d);
    const hypergap::DiameterBounds b = hypergap::diameter_bounds(d);
    std::cout << "diameter = " << fmt(rep.diameter) << "\n"
              << "achieving_pair = " << hypergap::to_string(rep.achieving_pair) << "\n"
              << "lower_bound = " << fmt(rep.lower_bound) << "\n"
              << "upper_bound = " << fmt(rep.upper_bound) << "\n"
              << "linear_lower = " << fmt(b.linear_lower) << "\n"
              << "linear_upper = " << fmt(b.linear_upper) << "\n"
              << "eta = " << fmt(rep.eta) << "\n";
    return kExitOk;
}

int run_sweep_cmd(const hypergap::SweepSpec& spec, unsigned jobs) {
    const hypergap::SweepResult res = hypergap::run_sweep(spec, jobs);
    const std::string meta = "hypergap sweep grid=" + std::to_string(spec.grid_size) +
                             " domains=" + std::to_string(res.records.size());
    std::ostringstream body;
    if (spec.format == "json") {
        body << hypergap::sweep_to_json(res, meta).dump(2) << "\n";
    } else {
        hypergap::write_sweep_csv(body, res, meta);
    }
    if (spec.output_path.empty() || spec.output_path == "-") {
        std::cout << body.str();
        return kExitOk;
    }
    std::ofstream out(spec.output_path);
    if (!out) {
        std::cerr << "error: cannot open output path " << spec.output_path << "\n";
        return kExitIo;
    }
    out << body.str();
    if (!out.good()) {
        std::cerr << "error: write failed for " << spec.output_path << "\n";
        return kExitIo;
    }
    return kExitOk;
}

int run_verify(const hypergap::VerifyOptions& opts, const std::string& report) {
    const hypergap::VerificationSummary sum = hypergap::run_verification(opts);
    std::cout << "checks_run = " << sum.checks_run << "\n"
              << "failures = " << sum.failures.size() << "\n";
    for (const auto& f : sum.failures)
        std::cout << "FAIL " << f.check << " " << f.domain << ": " << f.detail << "\n";
    if (report == "witnesses") {
        std::cout << "witnesses (normalized gap < 1): " << sum.witnesses.size() << "\n";
        for (const auto& w : sum.witnesses)
            std::cout << "  " << w.domain.label() << " normalized_gap = " << fmt(w.normalized_gap)
                      << "\n";
        std::cout << "large-gap witnesses (normalized gap > 1): " << sum.large_gap_witnesses.size()
                  << "\n";
        for (const auto& w : sum.large_gap_witnesses)
            std::cout << "  " << w.domain.label() << " normalized_gap = " << fmt(w.normalized_gap)
                      << "\n";
    }
    return sum.failures.empty() ? kExitOk : kExitInvariant;
}

int run_shih(double theta1, double c, std::size_t grid, int grid_r, int grid_theta) {
    const hypergap::NarrowWedgeReport rep = hypergap::shih_report(theta1, c, {grid});
    std::cout << "gap = " << fmt(rep.gap.gap) << "\n"
              << "diameter = " << fmt(rep.gap.diameter) << "\n"
              << "threshold_3pi2_over_2D2 = " << fmt(rep.threshold) << "\n"
              << "margin = " << fmt(rep.margin) << "\n"
              << "certificate = " << (rep.certified ? "PASS" : "FAIL") << "\n"
              << "rough_floor_3c2_over_2 = " << fmt(rep.rough_floor) << "\n"
              << "normalized_gap = " << fmt(rep.gap.normalized_gap) << "\n";
    const hypergap::DomainParams d = hypergap::DomainParams::make(c, 0.25 * hypergap::kPi, theta1);
    const hypergap::ProbeReport probe = hypergap::log_concavity_probe(d, grid_r, grid_theta, {grid});
    std::cout << "hessian_probe_points = " << probe.probes.size() << "\n"
              << "hessian_positive_points = " << probe.positive_count << "\n"
              << "hessian_skipped_points = " << probe.skipped_count << "\n";
    return rep.certified ? kExitOk : kExitInvariant;
}

int run_hessian(const DomainFlags& flags, std::size_t grid, int grid_r, int grid_theta,
                const std::string& out_path, const std::string& format) {
    const hypergap::DomainParams d = domain_from_flags(flags);
    const hypergap::ProbeReport rep = hypergap::log_concavity_probe(d, grid_r, grid_theta, {grid});
    std::cout << "lambda1 = " << fmt(rep.lambda1) << "\n"
              << "points = " << rep.probes.size() << "\n"
              << "positive_points = " << rep.positive_count << "\n"
              << "skipped_points = " << rep.skipped_count << "\n";
    if (out_path.empty()) return kExitOk;
    std::ostringstream body;
    if (format == "json") {
        nlohmann::json root;
        root["meta"] = {{"tool", "hypergap"}, {"lambda1", rep.lambda1}};
        nlohmann::json records = nlohmann::json::array();
        for (const auto& p : rep.probes)
            records.push_back({{"t", p.t},
                               {"theta", p.theta},
                               {"h11", p.h11},
                               {"h12", p.h12},
                               {"h22", p.h22},
                               {"max_eigenvalue", p.max_eigenvalue},
                               {"skipped", p.skipped}});
        root["records"] = std::move(records);
        body << root.dump(2) << "\n";
    } else {
        body << "# hypergap hessian lambda1=" << fmt(rep.lambda1) << "\n";
        body << "t,theta,h11,h12,h22,max_eigenvalue,skipped\n";
        for (const auto& p : rep.probes)
            body << fmt(p.t) << ',' << fmt(p.theta) << ',' << fmt(p.h11) << ',' << fmt(p.h12)
                 << ',' << fmt(p.h22) << ',' << fmt(p.max_eigenvalue) << ','
                 << (p.skipped ? "true" : "false") << "\n";
    }
    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "error: cannot open output path " << out_path << "\n";
        return kExitIo;
    }
    out << body.str();
    return out.good() ? kExitOk : kExitIo;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fundamental-gap toolkit for wedge domains of the hyperbolic half-plane"};
    app.require_subcommand(1);

    // gap
    auto* gap_cmd = app.add_subcommand("gap", "first two eigenvalues and the gap of one domain");
    DomainFlags gap_flags;
    std::size_t gap_grid = 2001;
    add_domain_flags(gap_cmd, gap_flags);
    gap_cmd->add_option("--grid", gap_grid, "angular solver grid nodes");
    std::string gap_config;
    gap_cmd->add_option("--config", gap_config, "flat key = value config file");

    // diameter
    auto* diam_cmd = app.add_subcommand("diameter", "diameter and its certified bounds");
    DomainFlags diam_flags;
    add_domain_flags(diam_cmd, diam_flags);
    std::string diam_config;
    diam_cmd->add_option("--config", diam_config, "flat key = value config file");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep to CSV or JSON");
    std::vector<double> sweep_c, sweep_ts, sweep_t0, sweep_t1;
    hypergap::SweepSpec spec;
    unsigned sweep_jobs = default_jobs();
    sweep_cmd->add_option("--c", sweep_c, "c grid values")->required();
    sweep_cmd->add_option("--theta-star", sweep_ts, "theta* grid values (with --symmetric)");
    sweep_cmd->add_flag("--symmetric", spec.symmetric, "sweep symmetric domains");
    sweep_cmd->add_option("--theta0", sweep_t0, "theta0 list, zipped with --theta1");
    sweep_cmd->add_option("--theta1", sweep_t1, "theta1 list, zipped with --theta0");
    sweep_cmd->add_option("--grid", spec.grid_size, "angular solver grid nodes");
    sweep_cmd->add_option("--format", spec.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep_cmd->add_option("--out", spec.output_path, "output path (default stdout)");
    sweep_cmd->add_option("--jobs", sweep_jobs, "worker count")->envname("HYPERGAP_JOBS");
    std::string sweep_config;
    sweep_cmd->add_option("--config", sweep_config, "flat key = value config file");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the full verification suite");
    hypergap::VerifyOptions vopts;
    std::string verify_report;
    int verify_nt = 33;
    verify_cmd->add_option("--grid", vopts.grid_size, "angular solver grid nodes");
    verify_cmd->add_option("--nt", verify_nt, "path samples");
    verify_cmd->add_option("--jobs", vopts.jobs, "worker count")->envname("HYPERGAP_JOBS");
    verify_cmd->add_option("--report", verify_report, "extra report: witnesses");
    verify_cmd->add_flag("--corrupt-eigensolver", vopts.corrupt_eigensolver,
                         "fault injection for harness self-tests");
    std::string verify_config;
    verify_cmd->add_option("--config", verify_config, "flat key = value config file");

    // shih
    auto* shih_cmd = app.add_subcommand("shih", "narrow-wedge gap certificate and Hessian probe");
    double shih_theta1 = 0.625 * hypergap::kPi;
    double shih_c = 0.2;
    std::size_t shih_grid = 2001;
    int shih_grid_r = 32, shih_grid_theta = 32;
    shih_cmd->add_option("--theta1", shih_theta1, "upper angle in (pi/2, 3pi/4)");
    shih_cmd->add_option("--c", shih_c, "radial frequency");
    shih_cmd->add_option("--grid", shih_grid, "angular solver grid nodes");
    shih_cmd->add_option("--grid-r", shih_grid_r, "radial probe points");
    shih_cmd->add_option("--grid-theta", shih_grid_theta, "angular probe points");
    std::string shih_config;
    shih_cmd->add_option("--config", shih_config, "flat key = value config file");

    // hessian
    auto* hess_cmd = app.add_subcommand("hessian", "log-concavity probe of the ground state");
    DomainFlags hess_flags;
    std::size_t hess_grid = 2001;
    int hess_grid_r = 32, hess_grid_theta = 32;
    std::string hess_out, hess_format = "csv";
    add_domain_flags(hess_cmd, hess_flags);
    hess_cmd->add_option("--grid", hess_grid, "angular solver grid nodes");
    hess_cmd->add_option("--grid-r", hess_grid_r, "radial probe points");
    hess_cmd->add_option("--grid-theta", hess_grid_theta, "angular probe points");
    hess_cmd->add_option("--out", hess_out, "probe data output path");
    hess_cmd->add_option("--format", hess_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    std::string hess_config;
    hess_cmd->add_option("--config", hess_config, "flat key = value config file");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        std::string config_path;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size())
                config_path = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0)
                config_path = args[i].substr(9);
        }
        if (!config_path.empty()) {
            const std::vector<std::string> extra = config_tokens(config_path, args);
            args.insert(args.end(), extra.begin(), extra.end());
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        std::vector<const char*> tokens;
        tokens.push_back(argv[0]);
        for (const std::string& a : args) tokens.push_back(a.c_str());
        app.parse(static_cast<int>(tokens.size()), tokens.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (gap_cmd->parsed()) return run_gap(gap_flags, gap_grid);
        if (diam_cmd->parsed()) return run_diameter(diam_flags);
        if (sweep_cmd->parsed()) {
            spec.c_values = sweep_c;
            spec.theta_star_values = sweep_ts;
            if (!spec.symmetric) {
                if (sweep_t0.size() != sweep_t1.size())
                    throw std::invalid_argument("--theta0 and --theta1 lists must match");
                for (std::size_t i = 0; i < sweep_t0.size(); ++i)
                    spec.theta_pairs.emplace_back(sweep_t0[i], sweep_t1[i]);
            }
            return run_sweep_cmd(spec, sweep_jobs);
        }
        if (verify_cmd->parsed()) {
            vopts.n_t = verify_nt;
            return run_verify(vopts, verify_report);
        }
        if (shih_cmd->parsed())
            return run_shih(shih_theta1, shih_c, shih_grid, shih_grid_r, shih_grid_theta);
        if (hess_cmd->parsed())
            return run_hessian(hess_flags, hess_grid, hess_grid_r, hess_grid_theta, hess_out,
                               hess_format);
    } catch (const hypergap::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const hypergap::SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const hypergap::InvalidRegime& e) {
        std::cerr << "invalid regime: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return kExitInput;
}
