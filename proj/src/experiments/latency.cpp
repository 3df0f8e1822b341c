// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/experiments/latency.hpp"

#include "agasp/experiments/stats.hpp"
#include "agasp/keys.hpp"

#include <algorithm>

namespace agasp::experiments {

namespace {

constexpr Wei kProbeFunding = ether(100);

double latency_seconds_between(SimTime submit, SimTime inclusion)
{
    return seconds_from_ticks(inclusion - submit);
}

} // namespace

netsim::LoadModel sweep_default_load()
{
    netsim::LoadModel load;
    load.arrival_rate_per_second = 10.0;
    load.gas_price_median = gwei(6);
    load.gas_price_sigma = 0.6;
    load.gas_limit_per_tx = 21'000;
    load.account_count = 32'768;
    load.phases = {
        netsim::LoadPhase{1'600.0, 1.0, 1.0},
        netsim::LoadPhase{200.0, 12.0, 1.0},
    };
    return load;
}

netsim::LoadModel cdf_default_load()
{
    // Calm traffic prices the 10 gwei probe into the next block or two;
    // congestion spikes raise both volume and prices, burying it for
    // hundreds of seconds. Flattened (the control), the same averages leave
    // no spike to get caught in.
    netsim::LoadModel load;
    load.arrival_rate_per_second = 21.0;
    load.gas_price_median = gwei(6);
    load.gas_price_sigma = 0.6;
    load.gas_limit_per_tx = 21'000;
    load.account_count = 49'152;
    load.phases = {
        netsim::LoadPhase{10'550.0, 1.0, 1.0},
        netsim::LoadPhase{300.0, 5.0, 6.0},
    };
    return load;
}

std::vector<Wei> sweep_default_prices()
{
    return {gwei(1), gwei(2), gwei(4), gwei(8), gwei(16), gwei(32), gwei(64)};
}

std::string SweepResult::to_csv() const
{
    std::string out = "gas_price_wei,trial,latency_seconds\n";
    for (const LatencySample& s : samples) {
        out += wei_to_string(s.gas_price) + "," + std::to_string(s.trial) + "," +
               format_seconds(s.inclusion_time - s.submit_time) + "\n";
    }
    return out;
}

SweepResult latency_sweep(const netsim::SimConfig& base, const SweepSettings& settings)
{
    SweepResult result;
    result.prices = settings.gas_prices;

    Address probe_addr = address_for_key(kProbeKeyBase);
    Address sink_addr = address_for_key(kProbeKeyBase + 1);

    for (Wei price : settings.gas_prices) {
        std::vector<double> latencies;
        for (std::uint32_t trial = 0; trial < settings.trials_per_price; ++trial) {
            netsim::SimConfig cfg = base;
            cfg.seed = base.seed + trial; // paired across prices
            cfg.load = settings.load;
            cfg.horizon_seconds = settings.horizon_seconds;

            netsim::Kernel kernel(cfg, {netsim::GenesisAccount{kProbeKeyBase, kProbeFunding}});
            SimTime probe_time = ticks_from_seconds(settings.probe_time_seconds);
            Transaction probe = make_transaction(probe_addr, 0, sink_addr, 0, price,
                                                 settings.probe_gas_limit, std::nullopt,
                                                 probe_time, kProbeKeyBase);
            kernel.schedule_timer(probe_time, "probe:submit",
                                  [&kernel, probe] { kernel.submit_transaction(probe); });
            kernel.run();

            const netsim::TxOutcome* outcome = kernel.outcome_for(probe.id);
            if (!outcome || outcome->state != netsim::TxOutcome::State::Included) {
                throw ProbeNeverIncluded(price);
            }
            LatencySample sample;
            sample.gas_price = price;
            sample.trial = trial;
            sample.submit_time = probe_time;
            sample.inclusion_time = outcome->inclusion_time;
            sample.latency_seconds =
                latency_seconds_between(probe_time, outcome->inclusion_time);
            latencies.push_back(sample.latency_seconds);
            result.samples.push_back(sample);
        }
        result.mean_latency.push_back(mean(latencies));
        result.latency_variance.push_back(sample_variance(latencies));
    }
    return result;
}

std::string CdfResult::to_csv() const
{
    std::string out = "sample_index,latency_seconds,cumulative_fraction\n";
    char buf[64];
    for (std::size_t i = 0; i < latencies_sorted.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f", i, latencies_sorted[i],
                      static_cast<double>(i + 1) / static_cast<double>(latencies_sorted.size()));
        out += buf;
        out += "\n";
    }
    return out;
}

CdfResult latency_cdf(const netsim::SimConfig& base, const CdfSettings& settings)
{
    netsim::SimConfig cfg = base;
    cfg.load = settings.constant_load ? settings.load.flattened() : settings.load;
    double last_probe = settings.first_probe_seconds +
                        settings.probe_spacing_seconds * (settings.trials - 1);
    cfg.horizon_seconds = last_probe + settings.horizon_margin_seconds;

    std::vector<netsim::GenesisAccount> probes;
    for (std::uint32_t i = 0; i < settings.trials; ++i) {
        probes.push_back(netsim::GenesisAccount{kProbeKeyBase + 100 + i, kProbeFunding});
    }
    Address sink_addr = address_for_key(kProbeKeyBase + 1);

    netsim::Kernel kernel(cfg, probes);
    std::vector<Transaction> probe_txs;
    for (std::uint32_t i = 0; i < settings.trials; ++i) {
        SimTime at = ticks_from_seconds(settings.first_probe_seconds +
                                        settings.probe_spacing_seconds * i);
        std::uint64_t key = kProbeKeyBase + 100 + i;
        Transaction probe =
            make_transaction(address_for_key(key), 0, sink_addr, 0, settings.probe_gas_price,
                             settings.probe_gas_limit, std::nullopt, at, key);
        probe_txs.push_back(probe);
        kernel.schedule_timer(at, "probe:submit",
                              [&kernel, probe] { kernel.submit_transaction(probe); });
    }
    kernel.run();

    CdfResult result;
    for (const Transaction& probe : probe_txs) {
        const netsim::TxOutcome* outcome = kernel.outcome_for(probe.id);
        if (!outcome || outcome->state != netsim::TxOutcome::State::Included) {
            throw ProbeNeverIncluded(settings.probe_gas_price);
        }
        result.latencies_sorted.push_back(
            latency_seconds_between(probe.submit_time, outcome->inclusion_time));
    }
    std::sort(result.latencies_sorted.begin(), result.latencies_sorted.end());
    result.mean_latency = mean(result.latencies_sorted);
    result.p95_latency = percentile_nearest_rank(result.latencies_sorted, 95.0);
    return result;
}

} // namespace agasp::experiments
