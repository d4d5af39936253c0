// Command-line front end: run one scenario, sweep a parameter, or evaluate
// the closed-form queueing models with an optional Monte-Carlo cross-check.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dcbsim/analytics.hpp"
#include "dcbsim/simulation.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Accepts plain numbers plus KB/MB/GB suffixes (powers of 1024).
double parse_quantity(const std::string& raw) {
    std::size_t pos = 0;
    const double v = std::stod(raw, &pos);
    std::string suffix = raw.substr(pos);
    while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.front())))
        suffix.erase(suffix.begin());
    if (suffix.empty()) return v;
    if (suffix == "KB" || suffix == "kB" || suffix == "kb") return v * 1024.0;
    if (suffix == "MB" || suffix == "mb") return v * 1024.0 * 1024.0;
    if (suffix == "GB" || suffix == "gb") return v * 1024.0 * 1024.0 * 1024.0;
    throw std::runtime_error("unrecognized unit suffix in '" + raw + "'");
}

std::map<std::string, double> parse_param_list(const std::string& csv) {
    std::map<std::string, double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("expected key=value in '" + item + "'");
        out[item.substr(0, eq)] = parse_quantity(item.substr(eq + 1));
    }
    return out;
}

double need(const std::map<std::string, double>& p, const std::string& key) {
    const auto it = p.find(key);
    if (it == p.end())
        throw std::runtime_error("missing model parameter '" + key + "'");
    return it->second;
}

double get_or(const std::map<std::string, double>& p, const std::string& key,
              double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int cmd_run(const std::string& path, bool have_seed, std::uint64_t seed,
            bool have_horizon, double horizon_ms, std::string out_dir) {
    dcbsim::ScenarioConfig cfg = dcbsim::parse_scenario(read_file(path));
    if (have_seed) cfg.seed = seed;
    if (have_horizon) cfg.horizon_ms = horizon_ms;
    if (out_dir.empty()) out_dir = cfg.out_dir.empty() ? "out" : cfg.out_dir;

    const dcbsim::RunResult r = dcbsim::run_scenario(cfg, out_dir);
    std::printf("wrote %s (seed %llu)\n", out_dir.c_str(),
                static_cast<unsigned long long>(cfg.seed));
    std::printf("  mice FCT mean/p99: %.3f / %.3f us (%llu completed)\n",
                r.mice_fct_mean_us, r.mice_fct_p99_us,
                static_cast<unsigned long long>(r.mice_completed));
    std::printf("  bottleneck util: %.4f, victim util: %.4f\n",
                r.bottleneck_utilization, r.victim_utilization);
    std::printf("  pauses: %llu, CNMs: %llu, drops m/e: %llu/%llu, "
                "drop ratio: %.4g\n",
                static_cast<unsigned long long>(r.pause_events),
                static_cast<unsigned long long>(r.cnm_count),
                static_cast<unsigned long long>(r.mice_drops),
                static_cast<unsigned long long>(r.elephant_drops),
                r.drop_ratio);
    std::printf("  conservation: %s\n", r.conservation ? "exact" : "VIOLATED");
    return 0;
}

int cmd_sweep(const std::string& path, const std::string& key,
              const std::string& values_csv, bool have_seed,
              std::uint64_t seed, std::string out_dir) {
    dcbsim::ScenarioConfig cfg = dcbsim::parse_scenario(read_file(path));
    if (have_seed) cfg.seed = seed;
    if (out_dir.empty()) out_dir = cfg.out_dir.empty() ? "sweep" : cfg.out_dir;

    const std::vector<std::string> values = split_csv(values_csv);
    const auto points = dcbsim::run_sweep(cfg, key, values, out_dir);
    std::fputs(dcbsim::sweep_table(key, points).c_str(), stdout);
    std::printf("wrote %s/sweep.csv (%zu points)\n", out_dir.c_str(),
                points.size());
    return 0;
}

int cmd_model(int eq, const std::string& params_csv,
              std::uint64_t oracle_samples, std::uint64_t seed) {
    namespace an = dcbsim::analytics;
    const auto p = parse_param_list(params_csv);

    if (eq == 1) {
        const double K = need(p, "K"), S = need(p, "S"), rho = need(p, "rho");
        const double prob = an::pfc_trigger_probability(K, S, rho);
        std::printf("%.3g\n", prob);
        std::printf("exact = %.12g\n", prob);
        if (oracle_samples) {
            const double C = get_or(p, "C", 1.25e9); // bytes/s, 10 Gb/s
            const double lambda = rho * C / S;
            const auto est = an::mm1_tail_estimate(lambda, S, C, K,
                                                   oracle_samples, seed);
            std::printf("oracle p = %.6g  ci95 = [%.6g, %.6g]  hits = %llu/%llu"
                        "  covers = %s\n",
                        est.p, est.ci_lo, est.ci_hi,
                        static_cast<unsigned long long>(est.hits),
                        static_cast<unsigned long long>(est.samples),
                        est.covers(prob) ? "yes" : "no");
        }
        return 0;
    }
    if (eq == 2) {
        an::ModelParams mp;
        mp.threshold_bytes = need(p, "K");
        mp.mean_size_bytes = need(p, "S");
        mp.rho = need(p, "rho");
        mp.ports = static_cast<int>(get_or(p, "n", 32));
        mp.headroom_bytes = get_or(p, "K0", 24095);
        const int hops = static_cast<int>(get_or(p, "j", 1));
        const double prob = an::congestion_tree_probability(mp, hops);
        std::printf("%.3g\n", prob);
        std::printf("exact = %.12g  threshold_bytes = %.12g\n", prob,
                    an::congestion_tree_threshold(mp, hops));
        return 0;
    }
    if (eq == 3) {
        const double S = need(p, "S"), r = need(p, "r");
        const double lambda = need(p, "lambda");
        const double prob = an::rate_decrease_probability(
            S, r, lambda, an::InterarrivalDist::Exponential);
        std::printf("%.3g\n", prob);
        std::printf("exact = %.12g  deterministic-arrivals = %.6g\n", prob,
                    an::rate_decrease_probability(
                        S, r, lambda, an::InterarrivalDist::Deterministic));
        if (oracle_samples) {
            const auto est =
                an::rate_decrease_estimate(S, r, lambda, oracle_samples, seed);
            std::printf("oracle p = %.6g  ci95 = [%.6g, %.6g]  covers = %s\n",
                        est.p, est.ci_lo, est.ci_hi,
                        est.covers(prob) ? "yes" : "no");
        }
        return 0;
    }
    throw std::runtime_error("--eq must be 1, 2 or 3");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"leaf-spine DCB simulator: PFC, QCN, ETS and traffic isolation"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "execute one scenario to its horizon");
    std::string run_file, run_out;
    std::uint64_t run_seed = 0;
    double run_horizon = 0;
    run->add_option("scenario", run_file, "scenario .ini file")->required();
    auto* run_seed_opt = run->add_option("--seed", run_seed, "override sim.seed");
    auto* run_hor_opt =
        run->add_option("--horizon", run_horizon, "override horizon, ms");
    run->add_option("--out", run_out, "output directory");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run once per parameter value");
    std::string sweep_file, sweep_key, sweep_values, sweep_out;
    std::uint64_t sweep_seed = 0;
    sweep->add_option("scenario", sweep_file, "scenario .ini file")->required();
    sweep->add_option("--param", sweep_key, "key to vary, e.g. isolation.mice_share")
        ->required();
    sweep->add_option("--values", sweep_values, "comma-separated values")
        ->required();
    auto* sweep_seed_opt =
        sweep->add_option("--seed", sweep_seed, "override base sim.seed");
    sweep->add_option("--out", sweep_out, "output directory");

    // model
    auto* model = app.add_subcommand("model", "closed-form queueing expressions");
    int model_eq = 1;
    std::string model_params;
    std::uint64_t model_oracle = 0, model_seed = 12345;
    model->add_option("--eq", model_eq, "expression: 1, 2 or 3")->required();
    model->add_option("--params", model_params,
                      "k=v list, e.g. K=24.47KB,S=2KB,rho=0.2");
    model->add_option("--oracle-samples", model_oracle,
                      "cross-check with this many Monte-Carlo samples");
    model->add_option("--oracle-seed", model_seed, "Monte-Carlo seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run)
            return cmd_run(run_file, run_seed_opt->count() > 0, run_seed,
                           run_hor_opt->count() > 0, run_horizon, run_out);
        if (*sweep)
            return cmd_sweep(sweep_file, sweep_key, sweep_values,
                             sweep_seed_opt->count() > 0, sweep_seed,
                             sweep_out);
        if (*model)
            return cmd_model(model_eq, model_params, model_oracle, model_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
