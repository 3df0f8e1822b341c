// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/transaction.hpp"

#include "agasp/sha256.hpp"

namespace agasp {

const char* contract_call_name(const ContractCall& call)
{
    switch (call.index()) {
    case 0: return "setGasInfo";
    case 1: return "sendDeposit";
    case 2: return "sendFuelUsage";
    }
    return "unknown";
}

namespace {

void serialize_call(ByteWriter& w, const ContractCall& call)
{
    w.put_u8(static_cast<std::uint8_t>(call.index()));
    if (const auto* set_info = std::get_if<SetGasInfoArgs>(&call)) {
        w.put_u128(set_info->min_deposit);
        w.put_u32(static_cast<std::uint32_t>(set_info->prices.size()));
        for (const auto& [fuel, price] : set_info->prices) {
            w.put_string(fuel);
            w.put_u128(price);
        }
    } else if (const auto* deposit = std::get_if<SendDepositArgs>(&call)) {
        w.put_address(deposit->station);
    } else if (const auto* usage = std::get_if<SendFuelUsageArgs>(&call)) {
        w.put_address(usage->vehicle);
        w.put_string(usage->fuel_type);
        w.put_u64(usage->milligallons);
    }
}

} // namespace

void Transaction::serialize_content(ByteWriter& w) const
{
    w.put_address(sender);
    w.put_u64(nonce);
    w.put_address(recipient);
    w.put_u128(value);
    w.put_u128(gas_price);
    w.put_u64(gas_limit);
    w.put_u8(payload.has_value() ? 1 : 0);
    if (payload) serialize_call(w, *payload);
    w.put_u64(submit_time);
}

Hash32 Transaction::compute_id() const
{
    ByteWriter w;
    serialize_content(w);
    return hash_content(w);
}

Wei Transaction::max_cost() const
{
    return value + gas_price * static_cast<Wei>(gas_limit);
}

Transaction make_transaction(const Address& sender, std::uint64_t nonce, const Address& recipient,
                             Wei value, Wei gas_price, std::uint64_t gas_limit,
                             std::optional<ContractCall> payload, SimTime submit_time,
                             std::uint64_t signer_key)
{
    Transaction tx;
    tx.sender = sender;
    tx.nonce = nonce;
    tx.recipient = recipient;
    tx.value = value;
    tx.gas_price = gas_price;
    tx.gas_limit = gas_limit;
    tx.payload = std::move(payload);
    tx.submit_time = submit_time;
    tx.signer_key = signer_key;
    tx.id = tx.compute_id();
    return tx;
}

} // namespace agasp
