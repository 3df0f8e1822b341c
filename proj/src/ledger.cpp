// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/ledger.hpp"

#include "agasp/contract.hpp"

#include <cassert>
#include <stdexcept>

namespace agasp {

std::uint64_t GasSchedule::gas_for(const Transaction& tx) const
{
    if (!tx.payload) return base_transfer;
    auto it = per_contract_function.find(contract_call_name(*tx.payload));
    if (it == per_contract_function.end()) {
        throw std::out_of_range(std::string("no gas entry for ") + contract_call_name(*tx.payload));
    }
    return it->second;
}

const char* tx_status_name(TxStatus status)
{
    switch (status) {
    case TxStatus::Success: return "success";
    case TxStatus::Reverted: return "reverted";
    case TxStatus::Invalid: return "invalid";
    }
    return "unknown";
}

const std::string* LogEntry::field(const std::string& name) const
{
    for (const auto& [key, val] : fields) {
        if (key == name) return &val;
    }
    return nullptr;
}

Wei compute_fee(Wei gas_price, std::uint64_t gas_used, std::uint64_t gas_limit)
{
    return gas_price * static_cast<Wei>(gas_used < gas_limit ? gas_used : gas_limit);
}

const char* tx_validity_name(TxValidity v)
{
    switch (v) {
    case TxValidity::Ok: return "ok";
    case TxValidity::UnknownSender: return "UnknownSender";
    case TxValidity::BadNonce: return "BadNonce";
    case TxValidity::InsufficientFunds: return "InsufficientFunds";
    }
    return "unknown";
}

TxValidity validate_transaction(const WorldState& state, const Transaction& tx)
{
    const Account* sender = state.find(tx.sender);
    if (!sender) return TxValidity::UnknownSender;
    if (tx.nonce != sender->nonce) return TxValidity::BadNonce;
    if (sender->balance < tx.max_cost()) return TxValidity::InsufficientFunds;
    return TxValidity::Ok;
}

Receipt apply_transaction(WorldState& state, const Transaction& tx, const Address& miner,
                          std::uint64_t block_number, const GasSchedule& schedule)
{
    assert(validate_transaction(state, tx) == TxValidity::Ok);

    Account& sender = state.at(tx.sender);
    sender.nonce += 1;

    Receipt receipt;
    receipt.tx_id = tx.id;
    receipt.block_number = block_number;
    receipt.gas_used = schedule.gas_for(tx);
    receipt.fee = compute_fee(tx.gas_price, receipt.gas_used, tx.gas_limit);

    // Fee leaves the sender and arrives at the miner whether or not the
    // call below reverts. fee <= gasPrice * gasLimit, which the validity
    // check reserved.
    sender.balance -= receipt.fee;
    state.get_or_create(miner).balance += receipt.fee;

    if (!tx.payload) {
        state.at(tx.sender).balance -= tx.value;
        state.get_or_create(tx.recipient).balance += tx.value;
        return receipt;
    }

    const Account* target = state.find(tx.recipient);
    if (!target || target->kind != AccountKind::Contract || tx.recipient != state.contract_address) {
        receipt.status = TxStatus::Reverted;
        LogEntry log;
        log.event = "Revert";
        log.fields.emplace_back("reason", "NotAContract");
        receipt.logs.push_back(std::move(log));
        return receipt;
    }

    contract::ExecOutcome outcome =
        contract::execute(state, tx.sender, tx.value, *tx.payload, block_number);
    receipt.status = outcome.status;
    receipt.logs = std::move(outcome.logs);
    if (outcome.status == TxStatus::Reverted) {
        LogEntry log;
        log.event = "Revert";
        log.fields.emplace_back("reason", outcome.revert_reason);
        receipt.logs.push_back(std::move(log));
    }
    return receipt;
}

} // namespace agasp
