// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/contract.hpp"

namespace agasp::contract {

namespace {

ExecOutcome reverted(std::string reason)
{
    ExecOutcome out;
    out.status = TxStatus::Reverted;
    out.revert_reason = std::move(reason);
    return out;
}

void put_prices(LogEntry& log, const std::map<std::string, Wei>& prices)
{
    for (const auto& [fuel, price] : prices) {
        log.fields.emplace_back("price:" + fuel, wei_to_string(price));
    }
}

ExecOutcome do_set_gas_info(WorldState& state, const Address& caller, const SetGasInfoArgs& args,
                            std::uint64_t block_number)
{
    if (args.min_deposit == 0) return reverted("InvalidMinDeposit");
    if (args.prices.empty()) return reverted("InvalidPrices");
    for (const auto& [fuel, price] : args.prices) {
        if (price == 0 || fuel.empty()) return reverted("InvalidPrices");
    }

    // Create or replace the caller's listing. Existing deposits keep the
    // snapshots they were created with.
    StationInfo& info = state.contract.stations[caller];
    info.station = caller;
    info.min_deposit = args.min_deposit;
    info.prices = args.prices;
    info.last_updated_block = block_number;

    ExecOutcome out;
    LogEntry log;
    log.event = "PricesSet";
    log.fields.emplace_back("station", caller.hex());
    log.fields.emplace_back("min_deposit", wei_to_string(args.min_deposit));
    put_prices(log, args.prices);
    out.logs.push_back(std::move(log));
    return out;
}

ExecOutcome do_send_deposit(WorldState& state, const Address& caller, Wei value,
                            const SendDepositArgs& args, std::uint64_t block_number)
{
    auto station_it = state.contract.stations.find(args.station);
    if (station_it == state.contract.stations.end()) return reverted("UnknownStation");
    if (state.contract.deposits.count(caller) != 0) return reverted("AlreadyDeposited");
    if (value < station_it->second.min_deposit) return reverted("BelowMinimum");

    // Escrow: the attached value moves to the contract account and a record
    // with the station's current prices is created.
    state.at(caller).balance -= value;
    state.at(state.contract_address).balance += value;

    DepositRecord record;
    record.vehicle = caller;
    record.station = args.station;
    record.amount = value;
    record.price_snapshot = station_it->second.prices;
    record.created_block = block_number;
    state.contract.deposits.emplace(caller, std::move(record));

    ExecOutcome out;
    LogEntry log;
    log.event = "DepositMade";
    log.fields.emplace_back("vehicle", caller.hex());
    log.fields.emplace_back("station", args.station.hex());
    log.fields.emplace_back("amount", wei_to_string(value));
    put_prices(log, state.contract.deposits.at(caller).price_snapshot);
    out.logs.push_back(std::move(log));
    return out;
}

ExecOutcome do_send_fuel_usage(WorldState& state, const Address& caller,
                               const SendFuelUsageArgs& args)
{
    auto it = state.contract.deposits.find(args.vehicle);
    // Only the station holding the deposit can settle it.
    if (it == state.contract.deposits.end() || it->second.station != caller) {
        return reverted("NoDeposit");
    }
    const DepositRecord& record = it->second;
    auto price_it = record.price_snapshot.find(args.fuel_type);
    if (price_it == record.price_snapshot.end()) return reverted("UnknownFuelType");

    Settlement s = settle(record.amount, price_it->second, args.milligallons);

    state.at(state.contract_address).balance -= record.amount;
    state.at(caller).balance += s.payment;
    state.at(args.vehicle).balance += s.change;

    ExecOutcome out;
    LogEntry log;
    log.event = "Settled";
    log.fields.emplace_back("vehicle", args.vehicle.hex());
    log.fields.emplace_back("station", caller.hex());
    log.fields.emplace_back("fuel_type", args.fuel_type);
    log.fields.emplace_back("milligallons", std::to_string(args.milligallons));
    log.fields.emplace_back("deposit", wei_to_string(record.amount));
    log.fields.emplace_back("payment", wei_to_string(s.payment));
    log.fields.emplace_back("change", wei_to_string(s.change));
    out.logs.push_back(std::move(log));
    if (s.shortfall) {
        LogEntry short_log;
        short_log.event = "Shortfall";
        short_log.fields.emplace_back("vehicle", args.vehicle.hex());
        short_log.fields.emplace_back("station", caller.hex());
        short_log.fields.emplace_back("uncapped_payment",
                                      wei_to_string(static_cast<Wei>(args.milligallons) * price_it->second));
        short_log.fields.emplace_back("deposit", wei_to_string(record.amount));
        out.logs.push_back(std::move(short_log));
    }

    state.contract.deposits.erase(it);
    return out;
}

} // namespace

Settlement settle(Wei deposit, Wei price_per_milligallon, std::uint64_t milligallons)
{
    Settlement s;
    Wei uncapped = static_cast<Wei>(milligallons) * price_per_milligallon;
    if (uncapped > deposit) {
        s.payment = deposit;
        s.shortfall = true;
    } else {
        s.payment = uncapped;
    }
    s.change = deposit - s.payment;
    return s;
}

ExecOutcome execute(WorldState& state, const Address& caller, Wei value, const ContractCall& call,
                    std::uint64_t block_number)
{
    if (const auto* set_info = std::get_if<SetGasInfoArgs>(&call)) {
        if (value != 0) return reverted("ValueNotAccepted");
        return do_set_gas_info(state, caller, *set_info, block_number);
    }
    if (const auto* deposit = std::get_if<SendDepositArgs>(&call)) {
        return do_send_deposit(state, caller, value, *deposit, block_number);
    }
    if (const auto* usage = std::get_if<SendFuelUsageArgs>(&call)) {
        if (value != 0) return reverted("ValueNotAccepted");
        return do_send_fuel_usage(state, caller, *usage);
    }
    return reverted("UnknownFunction");
}

const StationInfo* get_gas_info(const WorldState& state, const Address& station)
{
    auto it = state.contract.stations.find(station);
    return it == state.contract.stations.end() ? nullptr : &it->second;
}

bool verify_deposit(const WorldState& state, const Address& station, const Address& vehicle)
{
    auto it = state.contract.deposits.find(vehicle);
    return it != state.contract.deposits.end() && it->second.station == station;
}

} // namespace agasp::contract
