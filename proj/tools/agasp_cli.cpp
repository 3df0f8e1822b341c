// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/experiments/scenario_run.hpp"
#include "agasp/experiments/stats.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace agasp;
using namespace agasp::experiments;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
};

RunConfig load_config(const CommonOpts& opts)
{
    RunConfig cfg = opts.config_path.empty() ? default_run_config()
                                             : load_run_config_file(opts.config_path);
    if (opts.seed_set) cfg.sim.seed = opts.seed;
    return cfg;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

void add_common(CLI::App* cmd, CommonOpts& opts)
{
    cmd->add_option("--config", opts.config_path, "JSON run configuration (defaults built in)");
    cmd->add_option("--out-dir", opts.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", opts.seed, "override sim.seed")->each([&opts](const std::string&) {
        opts.seed_set = true;
    });
}

int cmd_fee_table(const CommonOpts& opts)
{
    RunConfig cfg = load_config(opts);
    FeeTable table = fee_table(cfg.fee, cfg.sim.gas_schedule);
    std::filesystem::create_directories(opts.out_dir);
    write_file(std::filesystem::path(opts.out_dir) / "fee_table.csv", table.to_csv());
    std::cout << table.to_text();
    return 0;
}

int cmd_latency_sweep(const CommonOpts& opts, bool with_event_log)
{
    RunConfig cfg = load_config(opts);
    std::filesystem::create_directories(opts.out_dir);
    (void)with_event_log;
    SweepResult result = latency_sweep(cfg.sim, cfg.sweep);
    write_file(std::filesystem::path(opts.out_dir) / "latency_sweep.csv", result.to_csv());

    std::cout << "gas_price_gwei,mean_latency_s,latency_variance\n";
    char buf[96];
    for (std::size_t i = 0; i < result.prices.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%llu,%.3f,%.3f\n",
                      static_cast<unsigned long long>(result.prices[i] / kWeiPerGwei),
                      result.mean_latency[i], result.latency_variance[i]);
        std::cout << buf;
    }
    std::vector<double> prices_d;
    for (Wei p : result.prices) prices_d.push_back(static_cast<double>(p));
    std::snprintf(buf, sizeof(buf), "spearman(gas_price, mean_latency) = %.4f\n",
                  spearman(prices_d, result.mean_latency));
    std::cout << buf;
    return 0;
}

int cmd_latency_cdf(const CommonOpts& opts, bool constant_load)
{
    RunConfig cfg = load_config(opts);
    if (constant_load) cfg.cdf.constant_load = true;
    std::filesystem::create_directories(opts.out_dir);
    CdfResult result = latency_cdf(cfg.sim, cfg.cdf);
    write_file(std::filesystem::path(opts.out_dir) / "latency_cdf.csv", result.to_csv());

    char buf[128];
    std::snprintf(buf, sizeof(buf), "samples=%zu mean=%.3fs p95=%.3fs p95/mean=%.3f\n",
                  result.latencies_sorted.size(), result.mean_latency, result.p95_latency,
                  result.p95_latency / result.mean_latency);
    std::cout << buf;
    return 0;
}

int cmd_run_scenario(const CommonOpts& opts)
{
    RunConfig cfg = load_config(opts);
    std::filesystem::create_directories(opts.out_dir);
    ScenarioRunResult result = run_scenario(cfg);

    std::filesystem::path out(opts.out_dir);
    write_file(out / "trace.json", result.trace.to_json().dump(2) + "\n");
    write_file(out / "events.jsonl", result.event_log);
    write_file(out / "audit.json", result.audit.to_json().dump(2) + "\n");

    if (result.trace.complete()) {
        std::cout << "purchase settled: payment " << wei_to_string(result.trace.payment)
                  << " wei, change " << wei_to_string(result.trace.change) << " wei\n";
    } else {
        std::cout << "purchase aborted at " << result.trace.abort_step << ": "
                  << result.trace.abort_reason << "\n";
    }
    std::cout << "audit " << (result.audit.clean ? "clean" : "FAILED") << " ("
              << result.audit.checks << " checks)\n";
    std::cout << "final state " << result.final_state_hash.hex() << "\n";
    return result.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Discrete-event simulator of machine-to-machine gasoline purchases on an "
                 "Ethereum-like chain"};
    app.require_subcommand(1);

    CommonOpts fee_opts;
    CLI::App* fee = app.add_subcommand("fee-table", "fee comparison table and savings");
    add_common(fee, fee_opts);

    CommonOpts sweep_opts;
    CLI::App* sweep = app.add_subcommand("latency-sweep", "inclusion latency vs gasPrice");
    add_common(sweep, sweep_opts);

    CommonOpts cdf_opts;
    bool constant_load = false;
    CLI::App* cdf = app.add_subcommand("latency-cdf", "latency distribution at fixed gasPrice");
    add_common(cdf, cdf_opts);
    cdf->add_flag("--constant-load", constant_load, "flatten load phases (control run)");

    CommonOpts scenario_opts;
    CLI::App* scenario = app.add_subcommand("run-scenario", "end-to-end purchase with audit");
    add_common(scenario, scenario_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (fee->parsed()) return cmd_fee_table(fee_opts);
        if (sweep->parsed()) return cmd_latency_sweep(sweep_opts, false);
        if (cdf->parsed()) return cmd_latency_cdf(cdf_opts, constant_load);
        if (scenario->parsed()) return cmd_run_scenario(scenario_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
