// asymwit command-line tool: witness bounds, finite-shot simulation,
// certification verdicts, gap search, and the reference-table regression.
//
// Exit codes: 0 success, 1 invalid input, 2 optimizer non-convergence,
// 3 reference-table regression failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "asymwit/asymwit.hpp"

using nlohmann::ordered_json;
using namespace asymwit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitTableMismatch = 3;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt5(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.5f", v);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::string fmt_triple(double a, double b, double c) {
    return join({fmt(a), fmt(b), fmt(c)});
}

ordered_json json_vec(const BlochVector& v) {
    return ordered_json::array({v.x, v.y, v.z});
}

// Shared flags describing the run.
struct Options {
    std::vector<double> angles;
    std::vector<double> cosines;
    long long shots = 8192;
    std::uint64_t seed = 1;
    double depolarizing = 0.0;
    int restarts = 64;
    int max_iterations = 10000;
    double sigma_k = 3.0;
    std::string out_path;
    std::string expectations_path;
    std::optional<double> observed;
    std::optional<double> observed_sigma;
    int gap_starts = 24;
};

void add_target_flags(CLI::App* cmd, Options& opt) {
    auto* angles = cmd->add_option("--angles", opt.angles,
                                   "target angles a12,a13,a23 in degrees")
                       ->delimiter(',')
                       ->expected(3);
    cmd->add_option("--cosines", opt.cosines, "target cosines c12,c13,c23")
        ->delimiter(',')
        ->expected(3)
        ->excludes(angles);
}

void add_optimizer_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--restarts", opt.restarts, "coordinate-ascent restarts");
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_option("--max-iterations", opt.max_iterations,
                    "iteration cap per restart");
}

void add_output_flag(CLI::App* cmd, Options& opt) {
    cmd->add_option("--out", opt.out_path, "write a JSON report to this path");
}

TargetTriple resolve_target(const Options& opt) {
    if (!opt.angles.empty())
        return target_from_angles_deg(opt.angles[0], opt.angles[1], opt.angles[2]);
    if (!opt.cosines.empty())
        return target_from_cosines(opt.cosines[0], opt.cosines[1], opt.cosines[2]);
    throw std::invalid_argument("a target is required: --angles or --cosines");
}

OptimizerConfig optimizer_config(const Options& opt) {
    OptimizerConfig cfg;
    cfg.restarts = opt.restarts;
    cfg.seed = opt.seed;
    cfg.max_iterations = opt.max_iterations;
    return cfg;
}

ordered_json config_json(const Options& opt, const TargetTriple& t,
                         const WitnessSpec& spec, const OptimizerConfig& cfg) {
    ordered_json j;
    if (!opt.angles.empty()) j["angles_deg"] = opt.angles;
    j["cosines"] = {t.cos12, t.cos13, t.cos23};
    j["omegas"] = {spec.omega12, spec.omega13, spec.omega23};
    j["restarts"] = cfg.restarts;
    j["max_iterations"] = cfg.max_iterations;
    j["improvement_tol"] = cfg.improvement_tol;
    j["seed"] = cfg.seed;
    return j;
}

void print_config(const Options& opt, const TargetTriple& t,
                  const WitnessSpec& spec, const OptimizerConfig& cfg) {
    if (!opt.angles.empty())
        std::cout << "target.angles_deg = "
                  << fmt_triple(opt.angles[0], opt.angles[1], opt.angles[2]) << "\n";
    std::cout << "target.cosines = " << fmt_triple(t.cos12, t.cos13, t.cos23) << "\n";
    std::cout << "witness.omegas = "
              << fmt_triple(spec.omega12, spec.omega13, spec.omega23) << "\n";
    std::cout << "optimizer.restarts = " << cfg.restarts << "\n";
    std::cout << "optimizer.max_iterations = " << cfg.max_iterations << "\n";
    std::cout << "optimizer.improvement_tol = " << fmt(cfg.improvement_tol) << "\n";
    std::cout << "optimizer.seed = " << cfg.seed << "\n";
}

ordered_json bounds_json(const BoundsReport& rep) {
    ordered_json j;
    j["q_max"] = rep.q_max;
    j["q_mirror_123"] = rep.q_mirror_perm[0];
    j["q_mirror_213"] = rep.q_mirror_perm[1];
    j["q_mirror_312"] = rep.q_mirror_perm[2];
    j["q_mirror"] = rep.q_mirror;
    j["delta"] = rep.delta;
    j["best_permutation"] = to_string(rep.best_permutation);
    j["converged"] = rep.converged;
    j["used_fallback"] = rep.used_fallback;
    j["restarts_agreeing"] = rep.restarts_agreeing;
    j["best_states"] = ordered_json::array();
    for (const auto& n : rep.best_states) j["best_states"].push_back(json_vec(n));
    j["best_measurements"] = ordered_json::array();
    for (const auto& m : rep.best_measurements)
        j["best_measurements"].push_back(json_vec(m));
    return j;
}

void print_bounds(const BoundsReport& rep) {
    std::cout << "bounds.q_max = " << fmt(rep.q_max) << "\n";
    std::cout << "bounds.q_mirror_123 = " << fmt(rep.q_mirror_perm[0]) << "\n";
    std::cout << "bounds.q_mirror_213 = " << fmt(rep.q_mirror_perm[1]) << "\n";
    std::cout << "bounds.q_mirror_312 = " << fmt(rep.q_mirror_perm[2]) << "\n";
    std::cout << "bounds.q_mirror = " << fmt(rep.q_mirror) << "\n";
    std::cout << "bounds.delta = " << fmt(rep.delta) << "\n";
    std::cout << "bounds.best_permutation = " << to_string(rep.best_permutation) << "\n";
    std::cout << "bounds.converged = " << (rep.converged ? "true" : "false") << "\n";
    std::cout << "bounds.restarts_agreeing = " << rep.restarts_agreeing << "\n";
    for (int i = 0; i < 3; ++i) {
        const auto& n = rep.best_states[i];
        std::cout << "bounds.best_state_" << i + 1 << " = "
                  << fmt_triple(n.x, n.y, n.z) << "\n";
    }
    for (int i = 0; i < 6; ++i) {
        const auto& m = rep.best_measurements[i];
        std::cout << "bounds.best_measurement_" << i + 1 << " = "
                  << fmt_triple(m.x, m.y, m.z) << "\n";
    }
}

void write_report(const std::string& path, const ordered_json& j) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output path: " + path);
    out << j.dump(2) << "\n";
}

int cmd_bounds(const Options& opt) {
    const TargetTriple target = resolve_target(opt);
    const WitnessSpec spec = build_witness(target);
    const OptimizerConfig cfg = optimizer_config(opt);
    const BoundsReport rep = q_mirror(spec, cfg);

    std::cout << "command = bounds\n";
    print_config(opt, target, spec, cfg);
    print_bounds(rep);

    ordered_json j;
    j["command"] = "bounds";
    j["config"] = config_json(opt, target, spec, cfg);
    j["bounds"] = bounds_json(rep);
    write_report(opt.out_path, j);

    if (!rep.converged) {
        std::cerr << "error: optimizer did not converge on every permutation\n";
        return kExitNoConvergence;
    }
    return kExitOk;
}

ordered_json shot_json(const ShotResult& res, const ShotPlan& plan) {
    ordered_json j;
    j["shots_per_cell"] = plan.shots_per_cell;
    j["seed"] = plan.seed;
    j["depolarizing_p"] = plan.depolarizing_p;
    j["sampling_note"] = "shared preparations are re-sampled independently per cell";
    j["i3_sim"] = {res.per_pair_i3[0], res.per_pair_i3[1], res.per_pair_i3[2]};
    j["q_sim"] = res.i6_estimate;
    j["sigma"] = res.sigma;
    j["empirical_expectations"] = ordered_json::array();
    j["counts_zeros"] = ordered_json::array();
    for (int x = 0; x < 6; ++x) {
        ordered_json erow = ordered_json::array(), crow = ordered_json::array();
        for (int y = 0; y < 6; ++y) {
            if (res.counts[x][y].sampled) {
                erow.push_back(res.empirical[x][y]);
                crow.push_back(res.counts[x][y].zeros);
            } else {
                erow.push_back(nullptr);
                crow.push_back(nullptr);
            }
        }
        j["empirical_expectations"].push_back(erow);
        j["counts_zeros"].push_back(crow);
    }
    return j;
}

int cmd_simulate(const Options& opt) {
    const TargetTriple target = resolve_target(opt);
    const WitnessSpec spec = build_witness(target);
    const OptimizerConfig cfg = optimizer_config(opt);
    const Scenario scenario = scenario_from_targets(target);
    const ShotPlan plan{opt.shots, opt.seed, opt.depolarizing, false};
    const ShotResult res = simulate(scenario, spec, plan);
    const BoundsReport rep = q_mirror(spec, cfg);

    std::cout << "command = simulate\n";
    print_config(opt, target, spec, cfg);
    std::cout << "plan.shots_per_cell = " << plan.shots_per_cell << "\n";
    std::cout << "plan.depolarizing_p = " << fmt(plan.depolarizing_p) << "\n";
    std::cout << "plan.sampling_note = shared preparations are re-sampled independently per cell\n";
    std::cout << "result.q_mirror = " << fmt5(rep.q_mirror) << "\n";
    std::cout << "result.q_max = " << fmt5(rep.q_max) << "\n";
    std::cout << "result.i3_sim = " << fmt5(res.per_pair_i3[0]) << " "
              << fmt5(res.per_pair_i3[1]) << " " << fmt5(res.per_pair_i3[2]) << "\n";
    std::cout << "result.q_sim = " << fmt5(res.i6_estimate) << " +/- "
              << fmt5(res.sigma) << "\n";
    std::cout << "result.q_sim_full = " << fmt(res.i6_estimate) << "\n";
    std::cout << "result.sigma_full = " << fmt(res.sigma) << "\n";

    ordered_json j;
    j["command"] = "simulate";
    j["config"] = config_json(opt, target, spec, cfg);
    j["bounds"] = bounds_json(rep);
    j["simulation"] = shot_json(res, plan);
    write_report(opt.out_path, j);

    if (!rep.converged) {
        std::cerr << "error: optimizer did not converge on every permutation\n";
        return kExitNoConvergence;
    }
    return kExitOk;
}

int cmd_certify(const Options& opt) {
    const TargetTriple target = resolve_target(opt);
    const WitnessSpec spec = build_witness(target);
    const OptimizerConfig cfg = optimizer_config(opt);
    const BoundsReport rep = q_mirror(spec, cfg);
    if (!rep.converged) {
        std::cerr << "error: mirror bound not computed to convergence; "
                     "refusing to issue a verdict\n";
        return kExitNoConvergence;
    }

    double observed = 0.0, sigma = 0.0;
    std::string source;
    ordered_json observation;
    if (opt.observed.has_value() || opt.observed_sigma.has_value()) {
        if (!opt.observed.has_value() || !opt.observed_sigma.has_value())
            throw std::invalid_argument("--observed and --observed-sigma go together");
        if (!opt.expectations_path.empty())
            throw std::invalid_argument(
                "--observed and --expectations are mutually exclusive");
        observed = *opt.observed;
        sigma = *opt.observed_sigma;
        source = "scalar observation";
        observation["observed"] = observed;
        observation["sigma"] = sigma;
    } else if (!opt.expectations_path.empty()) {
        std::ifstream in(opt.expectations_path);
        if (!in)
            throw std::invalid_argument("cannot open expectations file: " +
                                        opt.expectations_path);
        const ExpectationTable table = read_expectation_table(in);
        validate_used_cells(spec, table);
        observed = i6_value(spec, table);
        ProbabilityTable p0{};
        for (int x = 0; x < 6; ++x)
            for (int y = 0; y < 6; ++y)
                p0[x][y] = spec.w[x][y] != 0.0 ? 0.5 * (1.0 + table[x][y]) : 0.5;
        sigma = i6_sigma(spec, p0, opt.shots);
        source = "expectation table " + opt.expectations_path;
        observation["expectations_path"] = opt.expectations_path;
        observation["shots_per_cell"] = opt.shots;
    } else {
        const Scenario scenario = scenario_from_targets(target);
        const ShotPlan plan{opt.shots, opt.seed, opt.depolarizing, false};
        const ShotResult res = simulate(scenario, spec, plan);
        observed = res.i6_estimate;
        sigma = res.sigma;
        source = "internal simulation";
        observation = shot_json(res, plan);
    }

    const CertificationVerdict v =
        make_verdict(observed, sigma, rep.q_mirror, rep.q_max, opt.sigma_k);

    std::cout << "command = certify\n";
    print_config(opt, target, spec, cfg);
    std::cout << "observation.source = " << source << "\n";
    std::cout << "verdict.i6_observed = " << fmt(v.i6_observed) << "\n";
    std::cout << "verdict.sigma = " << fmt(v.sigma) << "\n";
    std::cout << "verdict.q_mirror = " << fmt(v.q_mirror) << "\n";
    std::cout << "verdict.q_max = " << fmt(v.q_max) << "\n";
    std::cout << "verdict.excess = " << fmt(v.excess) << "\n";
    std::cout << "verdict.significance = " << fmt(v.significance) << "\n";
    std::cout << "verdict.threshold_k = " << fmt(v.threshold_k) << "\n";
    std::cout << "verdict.result = "
              << (v.certified ? "asymmetry_certified" : "not_certified") << "\n";

    ordered_json j;
    j["command"] = "certify";
    j["config"] = config_json(opt, target, spec, cfg);
    j["config"]["sigma_k"] = opt.sigma_k;
    j["observation"] = observation;
    j["observation"]["source"] = source;
    j["bounds"] = bounds_json(rep);
    j["verdict"] = {{"i6_observed", v.i6_observed},
                    {"sigma", v.sigma},
                    {"q_mirror", v.q_mirror},
                    {"q_max", v.q_max},
                    {"excess", v.excess},
                    {"significance", v.significance},
                    {"threshold_k", v.threshold_k},
                    {"certified", v.certified}};
    write_report(opt.out_path, j);
    return kExitOk;
}

int cmd_gap(const Options& opt) {
    GapSearchConfig cfg;
    cfg.optimizer = optimizer_config(opt);
    cfg.proposals = opt.gap_starts;
    const GapResult res = optimize_gap(cfg);

    std::cout << "command = gap\n";
    std::cout << "search.proposals = " << cfg.proposals << "\n";
    std::cout << "search.inner_restarts = " << cfg.inner_restarts << "\n";
    std::cout << "optimizer.restarts = " << cfg.optimizer.restarts << "\n";
    std::cout << "optimizer.seed = " << cfg.optimizer.seed << "\n";
    std::cout << "best.angles_deg = "
              << fmt_triple(res.angles_deg[0], res.angles_deg[1], res.angles_deg[2])
              << "\n";
    std::cout << "best.cosines = "
              << fmt_triple(res.target.cos12, res.target.cos13, res.target.cos23)
              << "\n";
    std::cout << "best.delta = " << fmt(res.delta) << "\n";
    print_bounds(res.report);

    ordered_json j;
    j["command"] = "gap";
    j["config"] = {{"proposals", cfg.proposals},
                   {"inner_restarts", cfg.inner_restarts},
                   {"restarts", cfg.optimizer.restarts},
                   {"seed", cfg.optimizer.seed}};
    j["best"] = {{"angles_deg", res.angles_deg},
                 {"cosines", {res.target.cos12, res.target.cos13, res.target.cos23}},
                 {"delta", res.delta}};
    j["bounds"] = bounds_json(res.report);
    write_report(opt.out_path, j);

    if (!res.converged) {
        std::cerr << "error: bound evaluation at the optimum did not converge\n";
        return kExitNoConvergence;
    }
    return kExitOk;
}

int cmd_table1(const Options& opt) {
    const OptimizerConfig cfg = optimizer_config(opt);
    const TableCheck check = check_reference_table(cfg);

    std::cout << "command = table1\n";
    std::cout << "optimizer.restarts = " << cfg.restarts << "\n";
    std::cout << "optimizer.seed = " << cfg.seed << "\n";
    for (const CellCheck& c : check.cells) {
        std::cout << c.name << " = " << fmt5(c.computed) << " published "
                  << fmt5(c.published) << " diff " << fmt(c.computed - c.published)
                  << " " << (c.ok ? "ok" : "MISMATCH") << "\n";
    }
    std::cout << "table1.result = " << (check.ok ? "pass" : "fail") << "\n";

    ordered_json j;
    j["command"] = "table1";
    j["config"] = {{"restarts", cfg.restarts}, {"seed", cfg.seed}};
    j["cells"] = ordered_json::array();
    for (const CellCheck& c : check.cells)
        j["cells"].push_back({{"name", c.name},
                              {"computed", c.computed},
                              {"published", c.published},
                              {"ok", c.ok}});
    j["pass"] = check.ok;
    write_report(opt.out_path, j);

    return check.ok ? kExitOk : kExitTableMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prepare-and-measure asymmetry witnesses for qubit triples"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* bounds = app.add_subcommand(
        "bounds", "witness bounds and gap for a target configuration");
    add_target_flags(bounds, opt);
    add_optimizer_flags(bounds, opt);
    add_output_flag(bounds, opt);

    CLI::App* simulate = app.add_subcommand(
        "simulate", "finite-shot simulation of the saturating scenario");
    add_target_flags(simulate, opt);
    add_optimizer_flags(simulate, opt);
    add_output_flag(simulate, opt);
    simulate->add_option("--shots", opt.shots, "shots per sampled cell");
    simulate->add_option("--depolarizing", opt.depolarizing,
                         "preparation depolarizing probability");

    CLI::App* certify = app.add_subcommand(
        "certify", "asymmetry verdict from observations or a simulation");
    add_target_flags(certify, opt);
    add_optimizer_flags(certify, opt);
    add_output_flag(certify, opt);
    certify->add_option("--shots", opt.shots, "shots per sampled cell");
    certify->add_option("--depolarizing", opt.depolarizing,
                        "preparation depolarizing probability (simulation source)");
    certify->add_option("--sigma-k", opt.sigma_k, "certification threshold k");
    certify->add_option("--expectations", opt.expectations_path,
                        "6x6 expectation table file (external observation)");
    certify->add_option("--observed", opt.observed, "observed witness value");
    certify->add_option("--observed-sigma", opt.observed_sigma,
                        "standard deviation of the observed value");

    CLI::App* gap = app.add_subcommand(
        "gap", "search for the target with the largest witness gap");
    add_optimizer_flags(gap, opt);
    add_output_flag(gap, opt);
    gap->add_option("--starts", opt.gap_starts, "random proposals");

    CLI::App* table1 = app.add_subcommand(
        "table1", "recompute the published reference table and compare");
    add_optimizer_flags(table1, opt);
    add_output_flag(table1, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (bounds->parsed()) return cmd_bounds(opt);
        if (simulate->parsed()) return cmd_simulate(opt);
        if (certify->parsed()) return cmd_certify(opt);
        if (gap->parsed()) return cmd_gap(opt);
        if (table1->parsed()) return cmd_table1(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
