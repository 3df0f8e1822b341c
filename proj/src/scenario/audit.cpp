// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/scenario/audit.hpp"

#include "agasp/contract.hpp"

#include <algorithm>

namespace agasp::scenario {

nlohmann::ordered_json AuditReport::to_json() const
{
    nlohmann::ordered_json doc;
    doc["clean"] = clean;
    doc["checks"] = checks;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const AuditMismatch& m : mismatches) {
        nlohmann::ordered_json entry;
        entry["field"] = m.field;
        entry["expected"] = m.expected;
        entry["actual"] = m.actual;
        list.push_back(std::move(entry));
    }
    doc["mismatches"] = list;
    return doc;
}

namespace {

struct ChainTx {
    const Transaction* tx = nullptr;
    const Receipt* receipt = nullptr;
    const Block* block = nullptr;
};

class Auditor {
public:
    Auditor(const PurchaseTrace& trace, const Chain& chain) : trace_(trace), chain_(chain)
    {
        index_chain();
    }

    AuditReport run();

private:
    void index_chain();
    void expect(bool ok, const std::string& field, const std::string& expected,
                const std::string& actual);
    template <typename T>
    void expect_eq(const T& chain_value, const T& trace_value, const std::string& field);
    const ChainTx* chain_tx(const Hash32& id);
    const LogEntry* find_log(const Receipt& receipt, const std::string& event);
    // Delivery time of the block confirming `tx` at the given depth.
    SimTime confirmation_time(const ChainTx& tx, std::uint32_t depth, bool& ok);

    void check_structure();
    void check_transactions();
    void check_settlement();
    void check_timeline();
    void check_no_extra_transactions();

    const PurchaseTrace& trace_;
    const Chain& chain_;
    std::map<Hash32, ChainTx> by_id_;
    AuditReport report_;
    bool structure_ok_ = true;
};

void Auditor::index_chain()
{
    for (const Hash32& hash : chain_.canonical_hashes()) {
        const Block* block = chain_.block_by_hash(hash);
        const std::vector<Receipt>* receipts = chain_.receipts_for(hash);
        if (!block || !receipts) continue;
        for (std::size_t i = 0; i < block->transactions.size(); ++i) {
            ChainTx entry;
            entry.tx = &block->transactions[i];
            entry.receipt = &(*receipts)[i];
            entry.block = block;
            by_id_.emplace(entry.tx->id, entry);
        }
    }
}

void Auditor::expect(bool ok, const std::string& field, const std::string& expected,
                     const std::string& actual)
{
    ++report_.checks;
    if (!ok) report_.mismatches.push_back({field, expected, actual});
}

template <typename T>
void Auditor::expect_eq(const T& chain_value, const T& trace_value, const std::string& field)
{
    std::string expected;
    std::string actual;
    if constexpr (std::is_same_v<T, Wei>) {
        expected = wei_to_string(chain_value);
        actual = wei_to_string(trace_value);
    } else if constexpr (std::is_same_v<T, std::string>) {
        expected = chain_value;
        actual = trace_value;
    } else {
        expected = std::to_string(chain_value);
        actual = std::to_string(trace_value);
    }
    expect(chain_value == trace_value, field, expected, actual);
}

const ChainTx* Auditor::chain_tx(const Hash32& id)
{
    auto it = by_id_.find(id);
    return it == by_id_.end() ? nullptr : &it->second;
}

const LogEntry* Auditor::find_log(const Receipt& receipt, const std::string& event)
{
    for (const LogEntry& log : receipt.logs) {
        if (log.event == event) return &log;
    }
    return nullptr;
}

SimTime Auditor::confirmation_time(const ChainTx& tx, std::uint32_t depth, bool& ok)
{
    std::uint64_t confirming = tx.block->number + depth - 1;
    const Block* block = chain_.block_by_number(confirming);
    if (!block) {
        ok = false;
        return 0;
    }
    ok = true;
    return block->timestamp + trace_.propagation_delay;
}

void Auditor::check_structure()
{
    std::vector<std::string> expected_steps;
    if (trace_.step("station_priced")) expected_steps.push_back("station_priced");
    expected_steps.insert(expected_steps.end(),
                          {"vehicle_funded", "info_polled", "deposit_sent", "deposit_confirmed",
                           "handshake", "fuel_dispensed", "usage_reported", "settled"});
    std::vector<std::string> actual_steps;
    for (const TraceStep& s : trace_.steps) actual_steps.push_back(s.name);

    bool order_ok = actual_steps == expected_steps;
    std::string expected_str;
    std::string actual_str;
    for (const auto& s : expected_steps) expected_str += s + ",";
    for (const auto& s : actual_steps) actual_str += s + ",";
    expect(order_ok, "steps.order", expected_str, actual_str);
    structure_ok_ = order_ok;

    expect(trace_.handshake_verified, "handshake_verified", "true",
           trace_.handshake_verified ? "true" : "false");
    expect(!trace_.aborted && trace_.abort_step.empty() && trace_.abort_reason.empty(), "aborted",
           "completed purchase", trace_.aborted ? "aborted" : trace_.abort_step + trace_.abort_reason);
    expect_eq<std::uint64_t>(trace_.dispensed_milligallons, trace_.requested_milligallons,
                             "requested_milligallons");

    // Off-chain steps carry no transaction and no fee.
    for (const char* name : {"info_polled", "deposit_confirmed", "handshake", "fuel_dispensed",
                             "settled"}) {
        const TraceStep* s = trace_.step(name);
        if (!s) continue;
        expect(!s->tx_id.has_value() && s->fee == 0, std::string("steps.") + name + ".off_chain",
               "no transaction", s->tx_id ? "tx " + s->tx_id->hex() : "no transaction");
    }
}

void Auditor::check_transactions()
{
    struct TxCheck {
        const char* step;
        Address sender;
        const char* call; // nullptr = plain transfer
    };
    const TxCheck checks[] = {
        {"station_priced", trace_.station, "setGasInfo"},
        {"vehicle_funded", trace_.user, nullptr},
        {"deposit_sent", trace_.vehicle, "sendDeposit"},
        {"usage_reported", trace_.station, "sendFuelUsage"},
    };
    for (const TxCheck& check : checks) {
        const TraceStep* step = trace_.step(check.step);
        if (!step) continue; // station_priced is optional
        std::string prefix = std::string("steps.") + check.step;
        if (!step->tx_id) {
            expect(false, prefix + ".tx_id", "fee-bearing transaction", "missing");
            continue;
        }
        const ChainTx* on_chain = chain_tx(*step->tx_id);
        if (!on_chain) {
            expect(false, prefix + ".tx_id", "on canonical chain", "not found");
            continue;
        }
        expect(on_chain->tx->sender == check.sender, prefix + ".sender",
               check.sender.hex(), on_chain->tx->sender.hex());
        if (check.call) {
            bool call_ok = on_chain->tx->payload &&
                           std::string(contract_call_name(*on_chain->tx->payload)) == check.call;
            expect(call_ok, prefix + ".call", check.call,
                   on_chain->tx->payload ? contract_call_name(*on_chain->tx->payload) : "transfer");
        } else {
            expect(!on_chain->tx->payload.has_value(), prefix + ".call", "transfer",
                   on_chain->tx->payload ? contract_call_name(*on_chain->tx->payload) : "transfer");
            expect(on_chain->tx->recipient == trace_.vehicle, prefix + ".recipient",
                   trace_.vehicle.hex(), on_chain->tx->recipient.hex());
        }
        expect(on_chain->receipt->status == TxStatus::Success, prefix + ".status", "success",
               tx_status_name(on_chain->receipt->status));
        expect_eq<Wei>(on_chain->receipt->fee, step->fee, prefix + ".fee_wei");
        expect_eq<std::uint64_t>(on_chain->block->number, step->block_number,
                                 prefix + ".block_number");
        expect_eq<std::uint64_t>(on_chain->tx->submit_time, step->time, prefix + ".time");
    }
}

void Auditor::check_settlement()
{
    const TraceStep* deposit_step = trace_.step("deposit_sent");
    const TraceStep* usage_step = trace_.step("usage_reported");
    if (!deposit_step || !usage_step || !deposit_step->tx_id || !usage_step->tx_id) return;
    const ChainTx* deposit_tx = chain_tx(*deposit_step->tx_id);
    const ChainTx* usage_tx = chain_tx(*usage_step->tx_id);
    if (!deposit_tx || !usage_tx) return;

    // Deposit facts from the chain.
    expect_eq<Wei>(deposit_tx->tx->value, trace_.deposit, "deposit_wei");
    const LogEntry* deposit_log = find_log(*deposit_tx->receipt, "DepositMade");
    if (!deposit_log) {
        expect(false, "logs.DepositMade", "present", "missing");
        return;
    }
    Wei chain_deposit = wei_from_string(*deposit_log->field("amount"));
    expect_eq<Wei>(chain_deposit, trace_.deposit, "logs.DepositMade.amount");
    expect(deposit_log->field("vehicle") && *deposit_log->field("vehicle") == trace_.vehicle.hex(),
           "logs.DepositMade.vehicle", trace_.vehicle.hex(),
           deposit_log->field("vehicle") ? *deposit_log->field("vehicle") : "missing");
    expect(deposit_log->field("station") && *deposit_log->field("station") == trace_.station.hex(),
           "logs.DepositMade.station", trace_.station.hex(),
           deposit_log->field("station") ? *deposit_log->field("station") : "missing");

    // Snapshot prices, exactly as committed at deposit time.
    std::map<std::string, Wei> chain_snapshot;
    for (const auto& [key, value] : deposit_log->fields) {
        if (key.rfind("price:", 0) == 0) chain_snapshot[key.substr(6)] = wei_from_string(value);
    }
    expect(chain_snapshot == trace_.price_snapshot, "price_snapshot_wei_per_mgal",
           std::to_string(chain_snapshot.size()) + " committed entries",
           std::to_string(trace_.price_snapshot.size()) + " claimed entries");

    // Usage facts from the chain.
    const auto* usage_args = usage_tx->tx->payload
                                 ? std::get_if<SendFuelUsageArgs>(&*usage_tx->tx->payload)
                                 : nullptr;
    if (!usage_args) {
        expect(false, "usage_reported.args", "sendFuelUsage", "missing");
        return;
    }
    expect_eq<std::string>(usage_args->fuel_type, trace_.fuel_type, "fuel_type");
    expect_eq<std::uint64_t>(usage_args->milligallons, trace_.dispensed_milligallons,
                             "dispensed_milligallons");
    expect(usage_args->vehicle == trace_.vehicle, "usage_reported.vehicle", trace_.vehicle.hex(),
           usage_args->vehicle.hex());

    // Recompute the settlement from chain data alone and require both the
    // trace and the contract's own Settled log to match it.
    auto price_it = chain_snapshot.find(usage_args->fuel_type);
    if (price_it == chain_snapshot.end()) {
        expect(false, "settlement.price", "fuel type in committed snapshot", "missing");
        return;
    }
    contract::Settlement expected =
        contract::settle(chain_deposit, price_it->second, usage_args->milligallons);
    expect_eq<Wei>(expected.payment, trace_.payment, "payment_wei");
    expect_eq<Wei>(expected.change, trace_.change, "change_wei");
    expect(expected.payment + expected.change == chain_deposit, "settlement.conservation",
           wei_to_string(chain_deposit),
           wei_to_string(expected.payment + expected.change));

    const LogEntry* settled_log = find_log(*usage_tx->receipt, "Settled");
    if (!settled_log) {
        expect(false, "logs.Settled", "present", "missing");
        return;
    }
    expect_eq<Wei>(expected.payment, wei_from_string(*settled_log->field("payment")),
                   "logs.Settled.payment");
    expect_eq<Wei>(expected.change, wei_from_string(*settled_log->field("change")),
                   "logs.Settled.change");
}

void Auditor::check_timeline()
{
    if (!structure_ok_) return;
    const TraceStep* pricing = trace_.step("station_priced");
    const TraceStep* funded = trace_.step("vehicle_funded");
    const TraceStep* polled = trace_.step("info_polled");
    const TraceStep* deposit = trace_.step("deposit_sent");
    const TraceStep* confirmed = trace_.step("deposit_confirmed");
    const TraceStep* handshake = trace_.step("handshake");
    const TraceStep* fueled = trace_.step("fuel_dispensed");
    const TraceStep* reported = trace_.step("usage_reported");
    const TraceStep* settled = trace_.step("settled");
    if (!funded || !polled || !deposit || !confirmed || !handshake || !fueled || !reported ||
        !settled) {
        return;
    }

    if (pricing) expect_eq<SimTime>(trace_.start_time, pricing->time, "steps.station_priced.time");
    expect_eq<SimTime>(trace_.start_time, funded->time, "steps.vehicle_funded.time.anchor");

    // Poll fires one poll_delay after the later of the two setup
    // confirmations (depth 1), both recomputable from inclusion blocks.
    const ChainTx* funded_tx = funded->tx_id ? chain_tx(*funded->tx_id) : nullptr;
    if (funded_tx) {
        bool ok = true;
        SimTime ready = confirmation_time(*funded_tx, 1, ok);
        if (pricing && pricing->tx_id) {
            const ChainTx* pricing_tx = chain_tx(*pricing->tx_id);
            if (pricing_tx) {
                bool ok2 = true;
                ready = std::max(ready, confirmation_time(*pricing_tx, 1, ok2));
                ok = ok && ok2;
            }
        }
        if (ok) {
            expect_eq<SimTime>(ready + trace_.timing.poll_delay, polled->time,
                               "steps.info_polled.time");
        }
    }

    expect_eq<SimTime>(polled->time + trace_.timing.decide_delay, deposit->time,
                       "steps.deposit_sent.time.anchor");

    const ChainTx* deposit_tx = deposit->tx_id ? chain_tx(*deposit->tx_id) : nullptr;
    if (deposit_tx) {
        bool ok = true;
        SimTime conf = confirmation_time(*deposit_tx, trace_.confirmation_depth, ok);
        if (ok) {
            expect_eq<SimTime>(conf, confirmed->time, "steps.deposit_confirmed.time");
        }
        expect_eq<std::uint64_t>(deposit_tx->block->number, confirmed->block_number,
                                 "steps.deposit_confirmed.block_number");
    }

    expect_eq<SimTime>(confirmed->time + trace_.timing.drive_delay, handshake->time,
                       "steps.handshake.time");

    if (trace_.pump_flow_mgal_per_minute > 0) {
        SimTime dispense_ticks = trace_.dispensed_milligallons * 60 * kTicksPerSecond /
                                 trace_.pump_flow_mgal_per_minute;
        expect_eq<SimTime>(handshake->time + trace_.timing.handshake_duration + dispense_ticks,
                           fueled->time, "steps.fuel_dispensed.time");
    } else {
        expect(false, "constants.pump_flow_mgal_per_minute", "> 0", "0");
    }

    expect_eq<SimTime>(fueled->time + trace_.timing.report_delay, reported->time,
                       "steps.usage_reported.time.anchor");

    const ChainTx* usage_tx = reported->tx_id ? chain_tx(*reported->tx_id) : nullptr;
    if (usage_tx) {
        expect_eq<SimTime>(usage_tx->block->timestamp, settled->time, "steps.settled.time");
        expect_eq<std::uint64_t>(usage_tx->block->number, settled->block_number,
                                 "steps.settled.block_number");
    }

    // The pump is occupied from handshake start to fueling end; every
    // confirmation wait lies outside that window.
    expect(confirmed->time <= handshake->time && reported->time >= fueled->time,
           "latency_hiding.window", "confirmation waits outside pump occupancy", "violated");
}

void Auditor::check_no_extra_transactions()
{
    const TraceStep* settled = trace_.step("settled");
    if (!settled) return;
    std::vector<Hash32> claimed;
    for (const TraceStep& s : trace_.steps) {
        if (s.tx_id) claimed.push_back(*s.tx_id);
    }
    for (const auto& [id, entry] : by_id_) {
        const Address& sender = entry.tx->sender;
        if (sender != trace_.station && sender != trace_.vehicle && sender != trace_.user) continue;
        if (entry.tx->submit_time < trace_.start_time || entry.tx->submit_time > settled->time) {
            continue;
        }
        bool listed = std::find(claimed.begin(), claimed.end(), id) != claimed.end();
        expect(listed, "chain.extra_transaction", "listed in trace",
               "unlisted tx " + id.hex() + " from " + sender.hex());
    }
}

AuditReport Auditor::run()
{
    check_structure();
    check_transactions();
    if (structure_ok_) {
        check_settlement();
        check_timeline();
        check_no_extra_transactions();
    }
    report_.clean = report_.mismatches.empty();
    return report_;
}

} // namespace

AuditReport audit_trace(const PurchaseTrace& trace, const Chain& chain)
{
    Auditor auditor(trace, chain);
    return auditor.run();
}

} // namespace agasp::scenario
