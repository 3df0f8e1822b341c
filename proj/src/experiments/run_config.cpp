// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/experiments/run_config.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace agasp::experiments {

using nlohmann::json;

RunConfig default_run_config()
{
    RunConfig cfg;

    cfg.sim.seed = 3;
    cfg.sim.mean_block_interval_seconds = 15.0;
    cfg.sim.block_gas_limit = 8'000'000;
    cfg.sim.propagation_delay_seconds = 0.5;
    cfg.sim.confirmation_depth = 1;
    cfg.sim.horizon_seconds = 600.0;

    // Light steady traffic behind the bundled purchase scenario.
    cfg.sim.load.arrival_rate_per_second = 2.0;
    cfg.sim.load.gas_price_median = gwei(8);
    cfg.sim.load.gas_price_sigma = 0.6;
    cfg.sim.load.account_count = 32;
    cfg.sim.load.phases.clear();

    cfg.sweep.gas_prices = sweep_default_prices();
    cfg.sweep.trials_per_price = 5;
    cfg.sweep.probe_gas_limit = 70'000;
    cfg.sweep.probe_time_seconds = 1'750.0;
    cfg.sweep.horizon_seconds = 3'600.0;
    cfg.sweep.load = sweep_default_load();

    cfg.cdf.probe_gas_price = gwei(10);
    cfg.cdf.trials = 60;
    cfg.cdf.probe_gas_limit = 70'000;
    cfg.cdf.first_probe_seconds = 500.0;
    cfg.cdf.probe_spacing_seconds = 937.0;
    cfg.cdf.horizon_margin_seconds = 4'000.0;
    cfg.cdf.constant_load = false;
    cfg.cdf.load = cdf_default_load();

    // $3.85 regular at $650/Ether, sibling grades alongside.
    cfg.scenario.station_min_deposit = 100'000'000'000'000'000ull; // 0.1 Ether
    cfg.scenario.station_prices = {
        {"regular", 5'923'076'923'000ull},
        {"midgrade", 6'307'692'307'000ull},
        {"premium", 6'692'307'692'000ull},
    };
    cfg.scenario.deposit_value = 100'000'000'000'000'000ull;
    cfg.scenario.funding_value = 150'000'000'000'000'000ull;
    cfg.scenario.station_genesis_balance = ether(1);
    cfg.scenario.user_genesis_balance = ether(1);
    return cfg;
}

namespace {

void require_known_keys(const json& obj, const std::set<std::string>& known,
                        const std::string& where)
{
    for (const auto& [key, value] : obj.items()) {
        if (known.count(key) == 0) {
            throw std::invalid_argument("unknown config key '" + key + "' in " + where);
        }
    }
}

Wei wei_field(const json& v)
{
    if (v.is_string()) return wei_from_string(v.get<std::string>());
    if (v.is_number_unsigned()) return static_cast<Wei>(v.get<std::uint64_t>());
    throw std::invalid_argument("wei values must be unsigned integers or decimal strings");
}

Decimal decimal_field(const json& v)
{
    if (v.is_string()) return Decimal::from_string(v.get<std::string>());
    return Decimal::from_double(v.get<double>());
}

void apply_load(const json& obj, netsim::LoadModel& load, const std::string& where)
{
    require_known_keys(obj,
                       {"arrival_rate_per_second", "gas_price_median_wei", "gas_price_sigma",
                        "gas_limit_per_tx", "account_count", "account_funding_wei", "tx_value_wei",
                        "phases"},
                       where);
    if (obj.contains("arrival_rate_per_second")) {
        load.arrival_rate_per_second = obj["arrival_rate_per_second"].get<double>();
    }
    if (obj.contains("gas_price_median_wei")) {
        load.gas_price_median = wei_field(obj["gas_price_median_wei"]);
    }
    if (obj.contains("gas_price_sigma")) load.gas_price_sigma = obj["gas_price_sigma"].get<double>();
    if (obj.contains("gas_limit_per_tx")) {
        load.gas_limit_per_tx = obj["gas_limit_per_tx"].get<std::uint64_t>();
    }
    if (obj.contains("account_count")) load.account_count = obj["account_count"].get<std::uint32_t>();
    if (obj.contains("account_funding_wei")) {
        load.account_funding = wei_field(obj["account_funding_wei"]);
    }
    if (obj.contains("tx_value_wei")) load.tx_value = wei_field(obj["tx_value_wei"]);
    if (obj.contains("phases")) {
        load.phases.clear();
        for (const auto& phase_doc : obj["phases"]) {
            require_known_keys(phase_doc,
                               {"duration_seconds", "rate_multiplier", "median_multiplier"},
                               where + ".phases");
            netsim::LoadPhase phase;
            phase.duration_seconds = phase_doc.at("duration_seconds").get<double>();
            if (phase_doc.contains("rate_multiplier")) {
                phase.rate_multiplier = phase_doc["rate_multiplier"].get<double>();
            }
            if (phase_doc.contains("median_multiplier")) {
                phase.median_multiplier = phase_doc["median_multiplier"].get<double>();
            }
            load.phases.push_back(phase);
        }
    }
}

void apply_timing(const json& obj, scenario::PurchaseTiming& timing, const std::string& where)
{
    require_known_keys(obj,
                       {"poll_delay_seconds", "decide_delay_seconds", "drive_delay_seconds",
                        "handshake_duration_seconds", "report_delay_seconds",
                        "confirmation_timeout_seconds"},
                       where);
    auto set = [&](const char* key, SimTime& field) {
        if (obj.contains(key)) field = ticks_from_seconds(obj[key].get<double>());
    };
    set("poll_delay_seconds", timing.poll_delay);
    set("decide_delay_seconds", timing.decide_delay);
    set("drive_delay_seconds", timing.drive_delay);
    set("handshake_duration_seconds", timing.handshake_duration);
    set("report_delay_seconds", timing.report_delay);
    set("confirmation_timeout_seconds", timing.confirmation_timeout);
}

} // namespace

RunConfig load_run_config_json(const std::string& json_text)
{
    RunConfig cfg = default_run_config();
    json doc = json::parse(json_text);
    require_known_keys(doc, {"sim", "fee", "sweep", "cdf", "scenario"}, "config root");

    if (doc.contains("sim")) {
        const json& sim = doc["sim"];
        require_known_keys(sim,
                           {"seed", "mean_block_interval_seconds", "block_gas_limit",
                            "propagation_delay_seconds", "confirmation_depth", "horizon_seconds",
                            "gas_schedule", "load"},
                           "sim");
        if (sim.contains("seed")) cfg.sim.seed = sim["seed"].get<std::uint64_t>();
        if (sim.contains("mean_block_interval_seconds")) {
            cfg.sim.mean_block_interval_seconds = sim["mean_block_interval_seconds"].get<double>();
        }
        if (sim.contains("block_gas_limit")) {
            cfg.sim.block_gas_limit = sim["block_gas_limit"].get<std::uint64_t>();
        }
        if (sim.contains("propagation_delay_seconds")) {
            cfg.sim.propagation_delay_seconds = sim["propagation_delay_seconds"].get<double>();
        }
        if (sim.contains("confirmation_depth")) {
            cfg.sim.confirmation_depth = sim["confirmation_depth"].get<std::uint32_t>();
        }
        if (sim.contains("horizon_seconds")) {
            cfg.sim.horizon_seconds = sim["horizon_seconds"].get<double>();
        }
        if (sim.contains("gas_schedule")) {
            const json& schedule = sim["gas_schedule"];
            require_known_keys(schedule,
                               {"base_transfer", "set_gas_info", "send_deposit",
                                "send_fuel_usage"},
                               "sim.gas_schedule");
            if (schedule.contains("base_transfer")) {
                cfg.sim.gas_schedule.base_transfer = schedule["base_transfer"].get<std::uint64_t>();
            }
            auto set_fn = [&](const char* key, const char* fn) {
                if (schedule.contains(key)) {
                    cfg.sim.gas_schedule.per_contract_function[fn] =
                        schedule[key].get<std::uint64_t>();
                }
            };
            set_fn("set_gas_info", "setGasInfo");
            set_fn("send_deposit", "sendDeposit");
            set_fn("send_fuel_usage", "sendFuelUsage");
        }
        if (sim.contains("load")) apply_load(sim["load"], cfg.sim.load, "sim.load");
    }

    if (doc.contains("fee")) {
        const json& fee = doc["fee"];
        require_known_keys(fee,
                           {"usd_per_ether", "gas_price_wei", "credit_rate", "credit_flat_usd",
                            "gallons", "usd_per_gallon"},
                           "fee");
        if (fee.contains("usd_per_ether")) cfg.fee.usd_per_ether = decimal_field(fee["usd_per_ether"]);
        if (fee.contains("gas_price_wei")) cfg.fee.gas_price = wei_field(fee["gas_price_wei"]);
        if (fee.contains("credit_rate")) cfg.fee.credit_rate = decimal_field(fee["credit_rate"]);
        if (fee.contains("credit_flat_usd")) {
            cfg.fee.credit_flat = decimal_field(fee["credit_flat_usd"]);
        }
        if (fee.contains("gallons")) cfg.fee.gallons = decimal_field(fee["gallons"]);
        if (fee.contains("usd_per_gallon")) {
            cfg.fee.usd_per_gallon = decimal_field(fee["usd_per_gallon"]);
        }
    }

    if (doc.contains("sweep")) {
        const json& sweep = doc["sweep"];
        require_known_keys(sweep,
                           {"gas_prices_gwei", "trials_per_price", "probe_gas_limit",
                            "probe_time_seconds", "horizon_seconds", "load"},
                           "sweep");
        if (sweep.contains("gas_prices_gwei")) {
            cfg.sweep.gas_prices.clear();
            for (const auto& p : sweep["gas_prices_gwei"]) {
                cfg.sweep.gas_prices.push_back(gwei(p.get<std::uint64_t>()));
            }
        }
        if (sweep.contains("trials_per_price")) {
            cfg.sweep.trials_per_price = sweep["trials_per_price"].get<std::uint32_t>();
        }
        if (sweep.contains("probe_gas_limit")) {
            cfg.sweep.probe_gas_limit = sweep["probe_gas_limit"].get<std::uint64_t>();
        }
        if (sweep.contains("probe_time_seconds")) {
            cfg.sweep.probe_time_seconds = sweep["probe_time_seconds"].get<double>();
        }
        if (sweep.contains("horizon_seconds")) {
            cfg.sweep.horizon_seconds = sweep["horizon_seconds"].get<double>();
        }
        if (sweep.contains("load")) apply_load(sweep["load"], cfg.sweep.load, "sweep.load");
    }

    if (doc.contains("cdf")) {
        const json& cdf = doc["cdf"];
        require_known_keys(cdf,
                           {"probe_gas_price_wei", "trials", "probe_gas_limit",
                            "first_probe_seconds", "probe_spacing_seconds",
                            "horizon_margin_seconds", "constant_load", "load"},
                           "cdf");
        if (cdf.contains("probe_gas_price_wei")) {
            cfg.cdf.probe_gas_price = wei_field(cdf["probe_gas_price_wei"]);
        }
        if (cdf.contains("trials")) cfg.cdf.trials = cdf["trials"].get<std::uint32_t>();
        if (cdf.contains("probe_gas_limit")) {
            cfg.cdf.probe_gas_limit = cdf["probe_gas_limit"].get<std::uint64_t>();
        }
        if (cdf.contains("first_probe_seconds")) {
            cfg.cdf.first_probe_seconds = cdf["first_probe_seconds"].get<double>();
        }
        if (cdf.contains("probe_spacing_seconds")) {
            cfg.cdf.probe_spacing_seconds = cdf["probe_spacing_seconds"].get<double>();
        }
        if (cdf.contains("horizon_margin_seconds")) {
            cfg.cdf.horizon_margin_seconds = cdf["horizon_margin_seconds"].get<double>();
        }
        if (cdf.contains("constant_load")) cfg.cdf.constant_load = cdf["constant_load"].get<bool>();
        if (cdf.contains("load")) apply_load(cdf["load"], cfg.cdf.load, "cdf.load");
    }

    if (doc.contains("scenario")) {
        const json& sc = doc["scenario"];
        require_known_keys(sc,
                           {"station_min_deposit_wei", "station_prices_wei_per_mgal",
                            "pump_flow_mgal_per_minute", "fuel_type", "milligallons",
                            "tank_capacity_milligallons", "deposit_value_wei",
                            "funding_value_wei", "station_genesis_balance_wei",
                            "user_genesis_balance_wei", "agent_gas_price_wei",
                            "agent_gas_limit", "start_time_seconds", "timing"},
                           "scenario");
        if (sc.contains("station_min_deposit_wei")) {
            cfg.scenario.station_min_deposit = wei_field(sc["station_min_deposit_wei"]);
        }
        if (sc.contains("station_prices_wei_per_mgal")) {
            cfg.scenario.station_prices.clear();
            for (const auto& [fuel, price] : sc["station_prices_wei_per_mgal"].items()) {
                cfg.scenario.station_prices[fuel] = wei_field(price);
            }
        }
        if (sc.contains("pump_flow_mgal_per_minute")) {
            cfg.scenario.pump_flow_mgal_per_minute =
                sc["pump_flow_mgal_per_minute"].get<std::uint64_t>();
        }
        if (sc.contains("fuel_type")) cfg.scenario.fuel_type = sc["fuel_type"].get<std::string>();
        if (sc.contains("milligallons")) {
            cfg.scenario.milligallons = sc["milligallons"].get<std::uint64_t>();
        }
        if (sc.contains("tank_capacity_milligallons")) {
            cfg.scenario.tank_capacity_milligallons =
                sc["tank_capacity_milligallons"].get<std::uint64_t>();
        }
        if (sc.contains("deposit_value_wei")) {
            cfg.scenario.deposit_value = wei_field(sc["deposit_value_wei"]);
        }
        if (sc.contains("funding_value_wei")) {
            cfg.scenario.funding_value = wei_field(sc["funding_value_wei"]);
        }
        if (sc.contains("station_genesis_balance_wei")) {
            cfg.scenario.station_genesis_balance = wei_field(sc["station_genesis_balance_wei"]);
        }
        if (sc.contains("user_genesis_balance_wei")) {
            cfg.scenario.user_genesis_balance = wei_field(sc["user_genesis_balance_wei"]);
        }
        if (sc.contains("agent_gas_price_wei")) {
            cfg.scenario.agent_gas_price = wei_field(sc["agent_gas_price_wei"]);
        }
        if (sc.contains("agent_gas_limit")) {
            cfg.scenario.agent_gas_limit = sc["agent_gas_limit"].get<std::uint64_t>();
        }
        if (sc.contains("start_time_seconds")) {
            cfg.scenario.start_time_seconds = sc["start_time_seconds"].get<double>();
        }
        if (sc.contains("timing")) apply_timing(sc["timing"], cfg.scenario.timing, "scenario.timing");
    }

    return cfg;
}

RunConfig load_run_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_run_config_json(buf.str());
}

} // namespace agasp::experiments
