// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/netsim/kernel.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace agasp::experiments {

constexpr std::uint64_t kProbeKeyBase = 0x50524f42'00000000ull; // "PROB"

// Probe that was still pending (or dropped) at the end of the horizon.
struct ProbeNeverIncluded : std::runtime_error {
    explicit ProbeNeverIncluded(Wei price)
        : std::runtime_error("probe at gasPrice " + wei_to_string(price) +
                             " not included within the horizon"),
          gas_price(price)
    {
    }
    Wei gas_price;
};

struct LatencySample {
    Wei gas_price = 0;
    std::uint32_t trial = 0;
    SimTime submit_time = 0;
    SimTime inclusion_time = 0; // timestamp of the including block
    double latency_seconds = 0.0;
};

// gasPrice sweep: per (price, trial) an independent run; trial seeds are
// shared across prices so per-trial comparisons are paired.
struct SweepSettings {
    std::vector<Wei> gas_prices;
    std::uint32_t trials_per_price = 5;
    std::uint64_t probe_gas_limit = 70'000;
    double probe_time_seconds = 1'750.0;
    double horizon_seconds = 3'600.0;
    netsim::LoadModel load;
};

struct SweepResult {
    std::vector<LatencySample> samples; // grouped by price, trials in order
    std::vector<Wei> prices;
    std::vector<double> mean_latency;    // per price
    std::vector<double> latency_variance;

    std::string to_csv() const; // gas_price_wei,trial,latency_seconds
};

SweepResult latency_sweep(const netsim::SimConfig& base, const SweepSettings& settings);

// Repeated identical probes spread across load phases; one long run.
struct CdfSettings {
    Wei probe_gas_price = gwei(10);
    std::uint32_t trials = 60;
    std::uint64_t probe_gas_limit = 70'000;
    double first_probe_seconds = 500.0;
    double probe_spacing_seconds = 937.0;
    double horizon_margin_seconds = 4'000.0;
    bool constant_load = false; // flatten the phase schedule (control run)
    netsim::LoadModel load;
};

struct CdfResult {
    std::vector<double> latencies_sorted;
    double mean_latency = 0.0;
    double p95_latency = 0.0;

    std::string to_csv() const; // sample_index,latency_seconds,cumulative_fraction
};

CdfResult latency_cdf(const netsim::SimConfig& base, const CdfSettings& settings);

// Calibrated defaults for each experiment's background load.
netsim::LoadModel sweep_default_load();
netsim::LoadModel cdf_default_load();
std::vector<Wei> sweep_default_prices(); // 1,2,4,...,64 gwei

} // namespace agasp::experiments
