// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/scenario/agents.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <optional>

namespace agasp::scenario {

// One timeline entry. Fee-bearing steps carry the transaction id, the fee
// paid, and the inclusion block; off-chain steps carry only a timestamp.
struct TraceStep {
    std::string name;
    SimTime time = 0;
    std::optional<Hash32> tx_id;
    Wei fee = 0;
    std::uint64_t block_number = 0;
};

// Scheduling constants of a purchase. The runner schedules every off-chain
// step at an exact offset from an on-chain anchor, so an audit can
// recompute the full timeline from chain data plus these constants.
struct PurchaseTiming {
    SimTime poll_delay = 2 * kTicksPerSecond;      // funding confirmed -> info polled
    SimTime decide_delay = 1 * kTicksPerSecond;    // info polled -> deposit submitted
    SimTime drive_delay = 30 * kTicksPerSecond;    // deposit confirmed -> at the pump
    SimTime handshake_duration = 2 * kTicksPerSecond;
    SimTime report_delay = 3 * kTicksPerSecond;    // fueling done -> usage submitted
    SimTime confirmation_timeout = 600 * kTicksPerSecond;
};

struct PurchaseParams {
    std::string fuel_type = "regular";
    std::uint64_t milligallons = 12'000;
    Wei deposit_value = 0;      // value attached to sendDeposit
    Wei funding_value = 0;      // user -> vehicle transfer
    SimTime start_time = 0;
    bool post_prices = true;    // false when the station's listing is current
    PurchaseTiming timing;
};

struct PurchaseTrace {
    Address station;
    Address vehicle;
    Address user;
    std::string fuel_type;
    std::uint64_t requested_milligallons = 0;
    std::uint64_t dispensed_milligallons = 0;
    Wei deposit = 0;
    std::map<std::string, Wei> price_snapshot;
    Wei payment = 0;
    Wei change = 0;
    bool handshake_verified = false;

    SimTime start_time = 0;
    std::uint32_t confirmation_depth = 1;
    SimTime propagation_delay = 0;
    PurchaseTiming timing;
    std::uint64_t pump_flow_mgal_per_minute = 0;

    std::vector<TraceStep> steps;
    bool aborted = false;
    std::string abort_step;
    std::string abort_reason;

    bool complete() const { return !aborted && !steps.empty() && steps.back().name == "settled"; }
    const TraceStep* step(const std::string& name) const;
    // Contract calls only; the funding transfer is fee-bearing but is not a
    // purchase-protocol transaction.
    std::size_t fee_bearing_contract_steps() const;

    nlohmann::ordered_json to_json() const;
    static PurchaseTrace from_json(const nlohmann::ordered_json& doc);
};

// Drives one full purchase through the kernel: pricing, funding, polling,
// deposit with confirmation wait, handshake, fueling, usage report, and
// settlement. The runner is an event-driven actor; construct it, call
// start(), run the kernel, then read trace().
class PurchaseRunner {
public:
    PurchaseRunner(netsim::Kernel& kernel, StationAgent station, VehicleAgent vehicle,
                   UserAccount user, PurchaseParams params);

    void start();
    bool finished() const { return done_; }
    const PurchaseTrace& trace() const { return trace_; }

    // Invoked once when the purchase settles or aborts.
    void on_done(std::function<void(const PurchaseTrace&)> callback)
    {
        done_callback_ = std::move(callback);
    }

private:
    void abort(const std::string& step, const std::string& reason);
    void finish();
    void submit_pricing_and_funding();
    void maybe_poll();
    void poll_and_decide();
    void send_deposit();
    void on_deposit_confirmed_impl(const Hash32& id, const netsim::ConfirmationEvent& ev);
    void at_pump();
    void after_handshake(SimTime handshake_start);
    void report_usage(std::uint64_t milligallons, const std::string& abort_after);

    netsim::Kernel& kernel_;
    StationAgent station_;
    VehicleAgent vehicle_;
    UserAccount user_;
    PurchaseParams params_;
    PurchaseTrace trace_;
    bool done_ = false;
    int confirmations_pending_ = 0;
    bool refund_after_abort_ = false;
    std::function<void(const PurchaseTrace&)> done_callback_;
};

} // namespace agasp::scenario
