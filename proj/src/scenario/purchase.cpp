// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/scenario/purchase.hpp"

#include "agasp/contract.hpp"

namespace agasp::scenario {

const TraceStep* PurchaseTrace::step(const std::string& name) const
{
    for (const TraceStep& s : steps) {
        if (s.name == name) return &s;
    }
    return nullptr;
}

std::size_t PurchaseTrace::fee_bearing_contract_steps() const
{
    std::size_t n = 0;
    for (const TraceStep& s : steps) {
        if (s.tx_id && s.name != "vehicle_funded") ++n;
    }
    return n;
}

PurchaseRunner::PurchaseRunner(netsim::Kernel& kernel, StationAgent station, VehicleAgent vehicle,
                               UserAccount user, PurchaseParams params)
    : kernel_(kernel),
      station_(std::move(station)),
      vehicle_(std::move(vehicle)),
      user_(std::move(user)),
      params_(std::move(params))
{
    trace_.station = station_.address;
    trace_.vehicle = vehicle_.address;
    trace_.user = user_.address;
    trace_.fuel_type = params_.fuel_type;
    trace_.requested_milligallons = params_.milligallons;
    trace_.confirmation_depth = vehicle_.confirmation_depth;
    trace_.propagation_delay = ticks_from_seconds(kernel_.config().propagation_delay_seconds);
    trace_.timing = params_.timing;
    trace_.pump_flow_mgal_per_minute = station_.pump_flow_mgal_per_minute;
}

void PurchaseRunner::start()
{
    kernel_.schedule_timer(params_.start_time, "purchase:start", [this] {
        submit_pricing_and_funding();
    });
}

void PurchaseRunner::abort(const std::string& step, const std::string& reason)
{
    if (done_) return;
    trace_.aborted = true;
    trace_.abort_step = step;
    trace_.abort_reason = reason;
    finish();
}

void PurchaseRunner::finish()
{
    if (done_) return;
    done_ = true;
    if (done_callback_) done_callback_(trace_);
}

namespace {

std::string revert_reason(const Receipt& receipt)
{
    for (const LogEntry& log : receipt.logs) {
        if (log.event == "Revert") {
            const std::string* reason = log.field("reason");
            if (reason) return *reason;
        }
    }
    return "Reverted";
}

std::map<std::string, Wei> prices_from_log(const LogEntry& log)
{
    std::map<std::string, Wei> prices;
    for (const auto& [key, value] : log.fields) {
        if (key.rfind("price:", 0) == 0) {
            prices[key.substr(6)] = wei_from_string(value);
        }
    }
    return prices;
}

} // namespace

void PurchaseRunner::submit_pricing_and_funding()
{
    trace_.start_time = kernel_.now();
    confirmations_pending_ = params_.post_prices ? 2 : 1;

    auto watch_setup_tx = [this](const Hash32& id, const std::string& step_name) {
        kernel_.watch_confirmation(id, 1, [this, id, step_name](const netsim::ConfirmationEvent& ev) {
            if (done_) return;
            if (ev.dropped) {
                abort(step_name, ev.drop_reason);
                return;
            }
            const Receipt* receipt = kernel_.receipt_for(id);
            if (!receipt || receipt->status != TxStatus::Success) {
                abort(step_name, receipt ? revert_reason(*receipt) : "MissingReceipt");
                return;
            }
            for (TraceStep& s : trace_.steps) {
                if (s.name == step_name) {
                    s.fee = receipt->fee;
                    s.block_number = receipt->block_number;
                }
            }
            maybe_poll();
        });
    };

    if (params_.post_prices) {
        SetGasInfoArgs args;
        args.min_deposit = station_.min_deposit;
        args.prices = station_.prices;
        Transaction tx = make_transaction(
            station_.address, kernel_.allocate_nonce(station_.address),
            kernel_.state().contract_address, 0, station_.gas_price, station_.gas_limit,
            ContractCall{args}, kernel_.now(), station_.key);
        trace_.steps.push_back(TraceStep{"station_priced", kernel_.now(), tx.id, 0, 0});
        kernel_.submit_transaction(tx);
        watch_setup_tx(tx.id, "station_priced");
    }

    Transaction funding = make_transaction(
        user_.address, kernel_.allocate_nonce(user_.address), vehicle_.address,
        params_.funding_value, user_.gas_price, kernel_.config().gas_schedule.base_transfer,
        std::nullopt, kernel_.now(), user_.key);
    trace_.steps.push_back(TraceStep{"vehicle_funded", kernel_.now(), funding.id, 0, 0});
    kernel_.submit_transaction(funding);
    watch_setup_tx(funding.id, "vehicle_funded");
}

void PurchaseRunner::maybe_poll()
{
    if (--confirmations_pending_ > 0) return;
    kernel_.schedule_timer(kernel_.now() + params_.timing.poll_delay, "vehicle:poll", [this] {
        poll_and_decide();
    });
}

void PurchaseRunner::poll_and_decide()
{
    if (done_) return;
    trace_.steps.push_back(TraceStep{"info_polled", kernel_.now(), std::nullopt, 0, 0});
    const StationInfo* info = contract::get_gas_info(kernel_.state(), station_.address);
    if (!info) {
        abort("info_polled", "UnknownStation");
        return;
    }
    if (info->prices.count(params_.fuel_type) == 0) {
        abort("info_polled", "UnknownFuelType");
        return;
    }
    kernel_.schedule_timer(kernel_.now() + params_.timing.decide_delay, "vehicle:deposit", [this] {
        send_deposit();
    });
}

void PurchaseRunner::send_deposit()
{
    if (done_) return;
    SendDepositArgs args;
    args.station = station_.address;
    Transaction tx = make_transaction(
        vehicle_.address, kernel_.allocate_nonce(vehicle_.address),
        kernel_.state().contract_address, params_.deposit_value, vehicle_.gas_price,
        vehicle_.gas_limit, ContractCall{args}, kernel_.now(), vehicle_.key);
    trace_.steps.push_back(TraceStep{"deposit_sent", kernel_.now(), tx.id, 0, 0});
    kernel_.submit_transaction(tx);

    Hash32 id = tx.id;
    kernel_.watch_confirmation(id, vehicle_.confirmation_depth,
                               [this, id](const netsim::ConfirmationEvent& ev) {
                                   on_deposit_confirmed_impl(id, ev);
                               });
    // Watchdog: if the deposit is still unconfirmed after the timeout, give
    // up rather than camp at the pump forever.
    kernel_.schedule_timer(kernel_.now() + params_.timing.confirmation_timeout,
                           "vehicle:deposit-timeout", [this] {
                               if (!done_ && !trace_.step("deposit_confirmed")) {
                                   abort("deposit_sent", "ConfirmationTimeout");
                               }
                           });
}

void PurchaseRunner::on_deposit_confirmed_impl(const Hash32& id,
                                               const netsim::ConfirmationEvent& ev)
{
    if (done_) return;
    if (ev.dropped) {
        abort("deposit_sent", ev.drop_reason);
        return;
    }
    const Receipt* receipt = kernel_.receipt_for(id);
    if (!receipt) {
        abort("deposit_sent", "MissingReceipt");
        return;
    }
    if (receipt->status != TxStatus::Success) {
        abort("deposit_sent", revert_reason(*receipt));
        return;
    }
    for (TraceStep& s : trace_.steps) {
        if (s.name == "deposit_sent") {
            s.fee = receipt->fee;
            s.block_number = receipt->block_number;
        }
    }
    trace_.deposit = params_.deposit_value;
    for (const LogEntry& log : receipt->logs) {
        if (log.event == "DepositMade") {
            trace_.price_snapshot = prices_from_log(log);
        }
    }
    trace_.steps.push_back(
        TraceStep{"deposit_confirmed", ev.time, std::nullopt, 0, ev.block_number});
    kernel_.schedule_timer(ev.time + params_.timing.drive_delay, "vehicle:drive", [this] {
        at_pump();
    });
}

void PurchaseRunner::at_pump()
{
    if (done_) return;
    SimTime handshake_start = kernel_.now();
    Handshake hs = run_handshake(kernel_, vehicle_.address, vehicle_.handshake_key,
                                 station_.address, station_.key, kernel_.rng());
    trace_.handshake_verified = hs.verified;
    trace_.steps.push_back(TraceStep{"handshake", handshake_start, std::nullopt, 0, 0});
    kernel_.schedule_timer(handshake_start + params_.timing.handshake_duration, "pump:handshake",
                           [this, handshake_start] { after_handshake(handshake_start); });
}

void PurchaseRunner::after_handshake(SimTime handshake_start)
{
    if (done_) return;
    if (!trace_.handshake_verified) {
        // No fuel is dispensed. The deposit stays escrowed until the
        // station cancels it with a zero-amount usage report.
        report_usage(0, "HandshakeFailed");
        return;
    }
    if (!contract::verify_deposit(kernel_.state(), station_.address, vehicle_.address)) {
        abort("verify_deposit", "NoDeposit");
        return;
    }
    std::uint64_t dispense_ticks = params_.milligallons * 60 * kTicksPerSecond /
                                   station_.pump_flow_mgal_per_minute;
    SimTime fuel_end = kernel_.now() + dispense_ticks;
    kernel_.schedule_timer(fuel_end, "pump:dispense", [this, fuel_end] {
        if (done_) return;
        trace_.dispensed_milligallons = params_.milligallons;
        trace_.steps.push_back(TraceStep{"fuel_dispensed", fuel_end, std::nullopt, 0, 0});
        report_usage(params_.milligallons, std::string());
    });
    (void)handshake_start;
}

void PurchaseRunner::report_usage(std::uint64_t milligallons, const std::string& abort_after)
{
    auto submit = [this, milligallons, abort_after] {
        SendFuelUsageArgs args;
        args.vehicle = vehicle_.address;
        args.fuel_type = params_.fuel_type;
        args.milligallons = milligallons;
        Transaction tx = make_transaction(
            station_.address, kernel_.allocate_nonce(station_.address),
            kernel_.state().contract_address, 0, station_.gas_price, station_.gas_limit,
            ContractCall{args}, kernel_.now(), station_.key);

        bool in_trace = abort_after.empty();
        if (in_trace) {
            trace_.steps.push_back(TraceStep{"usage_reported", kernel_.now(), tx.id, 0, 0});
        }
        kernel_.submit_transaction(tx);
        Hash32 id = tx.id;
        kernel_.watch_confirmation(id, 1, [this, id, in_trace,
                                           abort_after](const netsim::ConfirmationEvent& ev) {
            if (done_) return;
            if (!in_trace) {
                // Station-side refund after an aborted purchase; the trace
                // itself already failed at the recorded step.
                abort("handshake", abort_after);
                return;
            }
            if (ev.dropped) {
                abort("usage_reported", ev.drop_reason);
                return;
            }
            const Receipt* receipt = kernel_.receipt_for(id);
            if (!receipt || receipt->status != TxStatus::Success) {
                abort("usage_reported", receipt ? revert_reason(*receipt) : "MissingReceipt");
                return;
            }
            for (TraceStep& s : trace_.steps) {
                if (s.name == "usage_reported") {
                    s.fee = receipt->fee;
                    s.block_number = receipt->block_number;
                }
            }
            for (const LogEntry& log : receipt->logs) {
                if (log.event == "Settled") {
                    trace_.payment = wei_from_string(*log.field("payment"));
                    trace_.change = wei_from_string(*log.field("change"));
                }
            }
            const netsim::TxOutcome* outcome = kernel_.outcome_for(id);
            trace_.steps.push_back(TraceStep{"settled", outcome->inclusion_time, std::nullopt, 0,
                                             outcome->block_number});
            finish();
        });
    };

    kernel_.schedule_timer(kernel_.now() + params_.timing.report_delay,
                           abort_after.empty() ? "station:report" : "station:refund", submit);
}

} // namespace agasp::scenario
