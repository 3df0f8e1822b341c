// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/experiments/scenario_run.hpp"

#include "agasp/keys.hpp"

#include <sstream>

namespace agasp::experiments {

ScenarioRunResult run_scenario(const RunConfig& cfg)
{
    std::ostringstream event_log;

    std::vector<netsim::GenesisAccount> cast = {
        {kStationKey, cfg.scenario.station_genesis_balance},
        {kVehicleKey, 0},
        {kUserKey, cfg.scenario.user_genesis_balance},
    };
    netsim::Kernel kernel(cfg.sim, cast, &event_log);

    scenario::StationAgent station;
    station.address = address_for_key(kStationKey);
    station.key = kStationKey;
    station.min_deposit = cfg.scenario.station_min_deposit;
    station.prices = cfg.scenario.station_prices;
    station.pump_flow_mgal_per_minute = cfg.scenario.pump_flow_mgal_per_minute;
    station.gas_price = cfg.scenario.agent_gas_price;
    station.gas_limit = cfg.scenario.agent_gas_limit;

    scenario::VehicleAgent vehicle;
    vehicle.address = address_for_key(kVehicleKey);
    vehicle.key = kVehicleKey;
    vehicle.handshake_key = kVehicleKey;
    vehicle.target_station = station.address;
    vehicle.tank_capacity_milligallons = cfg.scenario.tank_capacity_milligallons;
    vehicle.confirmation_depth = cfg.sim.confirmation_depth;
    vehicle.gas_price = cfg.scenario.agent_gas_price;
    vehicle.gas_limit = cfg.scenario.agent_gas_limit;

    scenario::UserAccount user;
    user.address = address_for_key(kUserKey);
    user.key = kUserKey;
    user.gas_price = cfg.scenario.agent_gas_price;

    scenario::PurchaseParams params;
    params.fuel_type = cfg.scenario.fuel_type;
    params.milligallons = cfg.scenario.milligallons;
    params.deposit_value = cfg.scenario.deposit_value;
    params.funding_value = cfg.scenario.funding_value;
    params.start_time = ticks_from_seconds(cfg.scenario.start_time_seconds);
    params.post_prices = true;
    params.timing = cfg.scenario.timing;

    scenario::PurchaseRunner runner(kernel, station, vehicle, user, params);
    runner.start();
    kernel.run();

    ScenarioRunResult result;
    result.trace = runner.trace();
    result.event_log = event_log.str();
    result.final_state_hash = kernel.state().state_hash();
    if (runner.trace().complete()) {
        result.audit = scenario::audit_trace(runner.trace(), kernel.chain());
        result.ok = result.audit.clean;
    } else {
        result.audit.clean = false;
        if (!runner.finished()) {
            result.audit.mismatches.push_back(
                {"trace", "completed purchase", "still running at horizon"});
        } else {
            result.audit.mismatches.push_back(
                {"trace", "completed purchase",
                 "aborted at " + result.trace.abort_step + ": " + result.trace.abort_reason});
        }
        result.ok = false;
    }
    return result;
}

} // namespace agasp::experiments
