// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/experiments/fee_table.hpp"
#include "agasp/experiments/latency.hpp"
#include "agasp/scenario/purchase.hpp"

#include <string>

namespace agasp::experiments {

// Reserved key handles for the bundled scenario cast.
constexpr std::uint64_t kStationKey = 0x53544154'00000001ull; // "STAT"
constexpr std::uint64_t kVehicleKey = 0x56454849'00000001ull; // "VEHI"
constexpr std::uint64_t kUserKey = 0x55534552'00000001ull;    // "USER"

struct ScenarioConfig {
    Wei station_min_deposit = 0;
    std::map<std::string, Wei> station_prices;
    std::uint64_t pump_flow_mgal_per_minute = 10'000;
    std::string fuel_type = "regular";
    std::uint64_t milligallons = 12'000;
    std::uint64_t tank_capacity_milligallons = 15'000;
    Wei deposit_value = 0;
    Wei funding_value = 0;
    Wei station_genesis_balance = 0;
    Wei user_genesis_balance = 0;
    Wei agent_gas_price = gwei(10);
    std::uint64_t agent_gas_limit = 70'000;
    double start_time_seconds = 10.0;
    scenario::PurchaseTiming timing;
};

// Full parameterization of a run: one file drives every CLI command.
struct RunConfig {
    netsim::SimConfig sim;
    FeeConfig fee;
    SweepSettings sweep;
    CdfSettings cdf;
    ScenarioConfig scenario;
};

RunConfig default_run_config();

// Applies a JSON document over the defaults; unknown keys are rejected so a
// typo cannot silently fall back to a default.
RunConfig load_run_config_json(const std::string& json_text);
RunConfig load_run_config_file(const std::string& path);

} // namespace agasp::experiments
