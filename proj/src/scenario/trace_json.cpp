// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/scenario/purchase.hpp"

#include <stdexcept>

namespace agasp::scenario {

namespace {

SimTime ticks_from_string(const std::string& s)
{
    auto dot = s.find('.');
    std::uint64_t secs = std::stoull(s.substr(0, dot));
    std::uint64_t micros = 0;
    if (dot != std::string::npos) {
        std::string frac = s.substr(dot + 1);
        frac.resize(6, '0');
        micros = std::stoull(frac);
    }
    return secs * kTicksPerSecond + micros;
}

} // namespace

nlohmann::ordered_json PurchaseTrace::to_json() const
{
    nlohmann::ordered_json doc;
    doc["schema"] = "agasp.trace.v1";
    doc["station"] = station.hex();
    doc["vehicle"] = vehicle.hex();
    doc["user"] = user.hex();
    doc["fuel_type"] = fuel_type;
    doc["requested_milligallons"] = requested_milligallons;
    doc["dispensed_milligallons"] = dispensed_milligallons;
    doc["deposit_wei"] = wei_to_string(deposit);
    nlohmann::ordered_json snapshot = nlohmann::ordered_json::object();
    for (const auto& [fuel, price] : price_snapshot) {
        snapshot[fuel] = wei_to_string(price);
    }
    doc["price_snapshot_wei_per_mgal"] = snapshot;
    doc["payment_wei"] = wei_to_string(payment);
    doc["change_wei"] = wei_to_string(change);
    doc["handshake_verified"] = handshake_verified;

    nlohmann::ordered_json constants;
    constants["start_time"] = format_seconds(start_time);
    constants["confirmation_depth"] = confirmation_depth;
    constants["propagation_delay"] = format_seconds(propagation_delay);
    constants["poll_delay"] = format_seconds(timing.poll_delay);
    constants["decide_delay"] = format_seconds(timing.decide_delay);
    constants["drive_delay"] = format_seconds(timing.drive_delay);
    constants["handshake_duration"] = format_seconds(timing.handshake_duration);
    constants["report_delay"] = format_seconds(timing.report_delay);
    constants["pump_flow_mgal_per_minute"] = pump_flow_mgal_per_minute;
    doc["constants"] = constants;

    nlohmann::ordered_json steps_doc = nlohmann::ordered_json::array();
    for (const TraceStep& s : steps) {
        nlohmann::ordered_json step;
        step["step"] = s.name;
        step["time"] = format_seconds(s.time);
        if (s.tx_id) {
            step["tx_id"] = s.tx_id->hex();
            step["fee_wei"] = wei_to_string(s.fee);
            step["block_number"] = s.block_number;
        } else if (s.block_number != 0) {
            step["block_number"] = s.block_number;
        }
        steps_doc.push_back(std::move(step));
    }
    doc["steps"] = steps_doc;
    doc["aborted"] = aborted;
    doc["abort_step"] = abort_step;
    doc["abort_reason"] = abort_reason;
    return doc;
}

PurchaseTrace PurchaseTrace::from_json(const nlohmann::ordered_json& doc)
{
    if (doc.at("schema").get<std::string>() != "agasp.trace.v1") {
        throw std::invalid_argument("unknown trace schema");
    }
    PurchaseTrace trace;
    trace.station = Address::from_hex(doc.at("station").get<std::string>());
    trace.vehicle = Address::from_hex(doc.at("vehicle").get<std::string>());
    trace.user = Address::from_hex(doc.at("user").get<std::string>());
    trace.fuel_type = doc.at("fuel_type").get<std::string>();
    trace.requested_milligallons = doc.at("requested_milligallons").get<std::uint64_t>();
    trace.dispensed_milligallons = doc.at("dispensed_milligallons").get<std::uint64_t>();
    trace.deposit = wei_from_string(doc.at("deposit_wei").get<std::string>());
    for (const auto& [fuel, price] : doc.at("price_snapshot_wei_per_mgal").items()) {
        trace.price_snapshot[fuel] = wei_from_string(price.get<std::string>());
    }
    trace.payment = wei_from_string(doc.at("payment_wei").get<std::string>());
    trace.change = wei_from_string(doc.at("change_wei").get<std::string>());
    trace.handshake_verified = doc.at("handshake_verified").get<bool>();

    const auto& constants = doc.at("constants");
    trace.start_time = ticks_from_string(constants.at("start_time").get<std::string>());
    trace.confirmation_depth = constants.at("confirmation_depth").get<std::uint32_t>();
    trace.propagation_delay = ticks_from_string(constants.at("propagation_delay").get<std::string>());
    trace.timing.poll_delay = ticks_from_string(constants.at("poll_delay").get<std::string>());
    trace.timing.decide_delay = ticks_from_string(constants.at("decide_delay").get<std::string>());
    trace.timing.drive_delay = ticks_from_string(constants.at("drive_delay").get<std::string>());
    trace.timing.handshake_duration =
        ticks_from_string(constants.at("handshake_duration").get<std::string>());
    trace.timing.report_delay = ticks_from_string(constants.at("report_delay").get<std::string>());
    trace.pump_flow_mgal_per_minute =
        constants.at("pump_flow_mgal_per_minute").get<std::uint64_t>();

    for (const auto& step_doc : doc.at("steps")) {
        TraceStep step;
        step.name = step_doc.at("step").get<std::string>();
        step.time = ticks_from_string(step_doc.at("time").get<std::string>());
        if (step_doc.contains("tx_id")) {
            step.tx_id = Hash32::from_hex(step_doc.at("tx_id").get<std::string>());
            step.fee = wei_from_string(step_doc.at("fee_wei").get<std::string>());
            step.block_number = step_doc.at("block_number").get<std::uint64_t>();
        } else if (step_doc.contains("block_number")) {
            step.block_number = step_doc.at("block_number").get<std::uint64_t>();
        }
        trace.steps.push_back(std::move(step));
    }
    trace.aborted = doc.at("aborted").get<bool>();
    trace.abort_step = doc.at("abort_step").get<std::string>();
    trace.abort_reason = doc.at("abort_reason").get<std::string>();
    return trace;
}

} // namespace agasp::scenario
